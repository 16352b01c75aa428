#pragma once

#include <cstdint>

#include "hyperslice/geometry.hpp"

namespace hyperslice {

/// Counter-based generator: output k of stream s under key `seed` is a
/// SplitMix64-style hash of (seed, s, k). Streams are independent of the order
/// in which they are consumed.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed ^ 0x6a09e667f3bcc909ULL) ^ mix(stream + 0x9e3779b97f4a7c15ULL)) {}

  std::uint64_t next() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (one value per call, pair cached).
  double normal();

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

struct McEstimate {
  double estimate = 0.0;
  /// Binomial standard error; with 0 or n hits it uses (hits + 1) / (n + 2)
  /// in place of the hit fraction so it is never zero.
  double std_error = 0.0;
  std::int64_t hits = 0;
  std::int64_t samples = 0;
};

/// Fraction of n uniform points of [0,1]^d with a.x <= b.
McEstimate mc_halfspace_volume(const SectionSpec& spec, std::int64_t n,
                               std::uint64_t seed);

/// Uniform points on a (d-1)-disc of the hyperplane that contains the
/// section; the hit fraction times the disc area estimates the section volume.
/// The disc is the smaller of the one centered at the foot point of the cube
/// center (radius sqrt(d/4 - t^2)) and the one around the box
/// prod [0, min(1, b/a_i)], which is much tighter for shallow cuts.
McEstimate mc_section_volume(const SectionSpec& spec, std::int64_t n,
                             std::uint64_t seed);

/// Orthonormal basis of the complement of unit vector a (rows), via the
/// Householder reflection that maps a to a coordinate axis.
std::vector<std::vector<double>> orthonormal_complement(std::span<const double> a);

}  // namespace hyperslice
