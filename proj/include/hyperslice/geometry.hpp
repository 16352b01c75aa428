#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace hyperslice {

/// Hyperplane a.x = b at distance t from the center of [0,1]^d, with a a unit
/// vector in the nonnegative orthant and b = sigma(a)/2 - t.
class SectionSpec {
 public:
  int d() const { return static_cast<int>(a_.size()); }
  const std::vector<double>& a() const { return a_; }
  double t() const { return t_; }
  double b() const { return b_; }

  static SectionSpec diagonal(int d, double t);

 private:
  friend SectionSpec make_section_spec(std::span<const double> a_raw,
                                       double t);
  SectionSpec(std::vector<double> a, double t, double b)
      : a_(std::move(a)), t_(t), b_(b) {}

  std::vector<double> a_;
  double t_;
  double b_;
};

/// Normalizes a_raw and derives b. Throws Error(invalid_input) for d < 2, a
/// zero or negative coordinate vector, non-finite input, or t < 0.
SectionSpec make_section_spec(std::span<const double> a_raw, double t);

double sigma(std::span<const double> x);
double pi_product(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

/// Distance from {x : a.x = b} to the cube center, for any nonzero a.
double center_distance(std::span<const double> a, double b);

/// (1,...,1)/sqrt(d).
std::vector<double> diagonal_direction(int d);

/// Angle in radians between two nonzero vectors, robust near 0.
double angle_between(std::span<const double> x, std::span<const double> y);

using Vertex = std::vector<std::uint8_t>;

struct EnumerationLimits {
  int max_dimension = 30;
};

/// Vertices v of [0,1]^d with a.v <= b (ties included), lexicographic order.
/// a must be nonnegative; it need not be normalized.
std::vector<Vertex> vertices_below(std::span<const double> a, double b,
                                   EnumerationLimits limits = {});
std::vector<Vertex> vertices_below(const SectionSpec& spec,
                                   EnumerationLimits limits = {});

enum class CutKind { empty, corner, edge, square3, square4, claw4, other };

std::string_view to_string(CutKind kind);

struct CutClassification {
  int count_below = 0;
  CutKind kind = CutKind::empty;
  std::vector<Vertex> vertices;
};

/// Combinatorial type of the set of vertices on the near side of the cut.
/// A hyperplane with b <= 0 removes no volume from the cube and is reported
/// as empty with no vertices, even when it touches the origin.
CutClassification classify_cut(std::span<const double> a, double b,
                               EnumerationLimits limits = {});
CutClassification classify_cut(const SectionSpec& spec,
                               EnumerationLimits limits = {});

/// Representative of a under the coordinate permutations: sorted descending.
std::vector<double> canonicalize(std::span<const double> a);

enum class VolumeMethod { vertex_sum, integral, monte_carlo, closed_form };

std::string_view to_string(VolumeMethod method);

struct VolumeResult {
  double value = 0.0;
  VolumeMethod method = VolumeMethod::vertex_sum;
  double err = 0.0;
  CutClassification cut;
};

}  // namespace hyperslice
