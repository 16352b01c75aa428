#include "hyperslice/vertex_sum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hyperslice/errors.hpp"
#include "hyperslice/summation.hpp"

namespace hyperslice {

namespace {

namespace mp = boost::multiprecision;
using Extended =
    mp::number<mp::cpp_bin_float<128, mp::digit_base_2>, mp::et_off>;

constexpr double kZeroCoordinate = 1e-14;
constexpr double kEscalationRatio = 1e-9;

constexpr std::array<std::uint64_t, 21> kFactorials = [] {
  std::array<std::uint64_t, 21> f{};
  f[0] = 1;
  for (std::uint64_t n = 1; n < f.size(); ++n) f[n] = f[n - 1] * n;
  return f;
}();

void check_direction(std::span<const double> a) {
  if (a.empty()) fail(ErrorKind::invalid_input, "empty direction");
  for (double x : a) {
    if (!std::isfinite(x) || x < 0.0) {
      fail(ErrorKind::invalid_input,
           "direction coordinates must be finite and nonnegative");
    }
  }
}

std::vector<double> drop_zero_coordinates(std::span<const double> a) {
  const double scale = *std::max_element(a.begin(), a.end());
  std::vector<double> out;
  out.reserve(a.size());
  for (double x : a) {
    if (x > kZeroCoordinate * scale) out.push_back(x);
  }
  if (out.empty()) {
    fail(ErrorKind::degenerate, "direction has no nonzero coordinate");
  }
  return out;
}

double vertex_dot(std::span<const double> a, const Vertex& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (v[i]) s += a[i];
  }
  return s;
}

int parity(const Vertex& v) {
  int p = 0;
  for (auto x : v) p ^= x;
  return p;
}

SumEstimate sum_double(std::span<const double> a, double b, int power,
                       const std::vector<Vertex>& vertices) {
  const double eps = std::numeric_limits<double>::epsilon();
  CompensatedSum<> acc;
  double sensitivity = 0.0;
  for (const auto& v : vertices) {
    const double gap = b - vertex_dot(a, v);
    const double term = ipow(gap, power);
    acc.add(parity(v) ? -term : term);
    if (power > 0) sensitivity += power * ipow(std::abs(gap), power - 1);
  }
  const double scale = 1.0 / (factorial(power) * pi_product(a));
  SumEstimate out;
  out.value = acc.value() * scale;
  const double input_spread = std::abs(b) + sigma(a);
  out.err = eps * scale *
                (static_cast<double>(power + 2) * acc.magnitude() +
                 static_cast<double>(a.size()) * input_spread * sensitivity) +
            4.0 * eps * std::abs(out.value);
  return out;
}

SumEstimate sum_extended(std::span<const double> a, double b, int power,
                         const std::vector<Vertex>& vertices) {
  const double eps = std::numeric_limits<double>::epsilon();
  const Extended b_ext(b);
  CompensatedSum<Extended> acc;
  Extended sensitivity(0);
  for (const auto& v : vertices) {
    Extended gap = b_ext;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (v[i]) gap -= Extended(a[i]);
    }
    const Extended term = ipow(gap, power);
    acc.add(parity(v) ? Extended(-term) : term);
    if (power > 0) sensitivity += power * ipow(abs(gap), power - 1);
  }
  Extended denom(1);
  for (int k = 2; k <= power; ++k) denom *= k;
  for (double x : a) denom *= Extended(x);

  SumEstimate out;
  out.value = static_cast<double>(acc.value() / denom);
  out.extended = true;
  const double unit = std::ldexp(1.0, -120);
  const double input_spread = std::abs(b) + sigma(a);
  out.err = unit / static_cast<double>(denom) *
                (static_cast<double>(power + 2) *
                     static_cast<double>(acc.magnitude()) +
                 static_cast<double>(a.size()) * input_spread *
                     static_cast<double>(sensitivity)) +
            eps * std::abs(out.value);
  return out;
}

}  // namespace

double factorial(int n) {
  if (n < 0) fail(ErrorKind::domain, "factorial of a negative number");
  if (n < static_cast<int>(kFactorials.size())) {
    return static_cast<double>(kFactorials[static_cast<std::size_t>(n)]);
  }
  double f = static_cast<double>(kFactorials.back());
  for (int k = static_cast<int>(kFactorials.size()); k <= n; ++k) f *= k;
  return f;
}

SumEstimate signed_vertex_sum(std::span<const double> a, double b, int power,
                              Precision precision, EnumerationLimits limits) {
  check_direction(a);
  if (power < 0) fail(ErrorKind::domain, "negative power");
  for (double x : a) {
    if (x <= 0.0) {
      fail(ErrorKind::degenerate,
           "signed vertex sum needs strictly positive coordinates");
    }
  }
  const std::vector<Vertex> vertices = vertices_below(a, b, limits);
  if (vertices.empty()) return {};

  if (precision == Precision::extended) {
    return sum_extended(a, b, power, vertices);
  }
  SumEstimate out = sum_double(a, b, power, vertices);
  if (precision == Precision::automatic &&
      out.err > kEscalationRatio * std::abs(out.value)) {
    out = sum_extended(a, b, power, vertices);
  }
  return out;
}

SumEstimate halfspace_volume(std::span<const double> a, double b,
                             Precision precision, EnumerationLimits limits) {
  check_direction(a);
  const std::vector<double> reduced = drop_zero_coordinates(a);
  if (b < 0.0) return {};
  if (b >= sigma(reduced)) return {1.0, 0.0, false};
  SumEstimate out = signed_vertex_sum(
      reduced, b, static_cast<int>(reduced.size()), precision, limits);
  out.value = std::clamp(out.value, 0.0, 1.0);
  return out;
}

SumEstimate section_volume(std::span<const double> a, double b,
                           Precision precision, EnumerationLimits limits) {
  check_direction(a);
  const std::vector<double> reduced = drop_zero_coordinates(a);
  if (b < 0.0 || b > sigma(reduced)) return {};
  SumEstimate out = signed_vertex_sum(
      reduced, b, static_cast<int>(reduced.size()) - 1, precision, limits);
  const double n = norm2(reduced);
  out.value = std::max(0.0, out.value * n);
  out.err *= n;
  return out;
}

VolumeResult section_volume_vertex_sum(const SectionSpec& spec,
                                       Precision precision,
                                       EnumerationLimits limits) {
  VolumeResult out;
  out.method = VolumeMethod::vertex_sum;
  out.cut = classify_cut(spec, limits);
  const SumEstimate s = section_volume(spec.a(), spec.b(), precision, limits);
  out.value = s.value;
  out.err = s.err;
  return out;
}

VolumeResult halfspace_volume(const SectionSpec& spec, Precision precision,
                              EnumerationLimits limits) {
  VolumeResult out;
  out.method = VolumeMethod::vertex_sum;
  out.cut = classify_cut(spec, limits);
  const SumEstimate s = halfspace_volume(spec.a(), spec.b(), precision, limits);
  out.value = s.value;
  out.err = s.err;
  return out;
}

double corner_volume(const SectionSpec& spec) {
  const CutClassification cut = classify_cut(spec);
  if (cut.kind != CutKind::corner) {
    fail(ErrorKind::regime, "corner_volume needs a corner cut, got " +
                                std::string(to_string(cut.kind)));
  }
  const int d = spec.d();
  return ipow(spec.b(), d - 1) / (factorial(d - 1) * pi_product(spec.a()));
}

double edge_volume(const SectionSpec& spec) {
  const CutClassification cut = classify_cut(spec);
  if (cut.kind != CutKind::edge) {
    fail(ErrorKind::regime, "edge_volume needs an edge cut, got " +
                                std::string(to_string(cut.kind)));
  }
  const Vertex& tip = cut.vertices.back();  // lexicographically after origin
  const auto cut_index = static_cast<std::size_t>(
      std::find(tip.begin(), tip.end(), std::uint8_t{1}) - tip.begin());

  const int d = spec.d();
  const double b = spec.b();
  const double near = b - spec.a()[cut_index];
  // b^n - (b - a_i)^n = a_i * sum_k b^k (b - a_i)^(n-1-k); a_i cancels with
  // pi(a), so the form stays finite as a_i -> 0.
  const int n = d - 1;
  CompensatedSum<> telescoped;
  for (int k = 0; k < n; ++k) {
    telescoped.add(ipow(b, k) * ipow(near, n - 1 - k));
  }
  double others = 1.0;
  for (std::size_t i = 0; i < spec.a().size(); ++i) {
    if (i != cut_index) others *= spec.a()[i];
  }
  return telescoped.value() / (factorial(n) * others);
}

double section_from_halfspace_derivative(const SectionSpec& spec, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    fail(ErrorKind::invalid_input, "finite-difference step must be positive");
  }
  const double lo = spec.b() - h;
  const double hi = spec.b() + h;
  if (vertices_below(spec.a(), lo).size() != vertices_below(spec.a(), hi).size()) {
    fail(ErrorKind::cell_crossing,
         "a cube vertex crosses the hyperplane within the difference stencil");
  }
  const double upper = halfspace_volume(spec.a(), hi, Precision::extended).value;
  const double lower = halfspace_volume(spec.a(), lo, Precision::extended).value;
  return (upper - lower) / (2.0 * h);
}

}  // namespace hyperslice
