#include "hyperslice/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "hyperslice/errors.hpp"
#include "hyperslice/interval.hpp"
#include "hyperslice/summation.hpp"

namespace hyperslice {

namespace {

constexpr std::int64_t kExactDoubleLimit = std::int64_t{1} << 53;

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) {
    fail(ErrorKind::capacity, "polynomial coefficient overflow");
  }
  return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) {
    fail(ErrorKind::capacity, "polynomial coefficient overflow");
  }
  return r;
}

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

IntPoly add(const IntPoly& p, const IntPoly& q) {
  IntPoly r(std::max(p.size(), q.size()), 0);
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = checked_add(r[i], p[i]);
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = checked_add(r[i], q[i]);
  trim(r);
  return r;
}

IntPoly scale(const IntPoly& p, std::int64_t k) {
  IntPoly r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = checked_mul(p[i], k);
  trim(r);
  return r;
}

IntPoly mul(const IntPoly& p, const IntPoly& q) {
  if (p.empty() || q.empty()) return {};
  IntPoly r(p.size() + q.size() - 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      r[i + j] = checked_add(r[i + j], checked_mul(p[i], q[j]));
    }
  }
  trim(r);
  return r;
}

IntPoly monomial(int n, std::int64_t c = 1) {
  IntPoly r(static_cast<std::size_t>(n) + 1, 0);
  r.back() = c;
  return r;
}

IntPoly one_minus_y_pow(int n) {
  IntPoly r{1};
  for (int k = 0; k < n; ++k) r = mul(r, IntPoly{1, -1});
  return r;
}

std::int64_t coefficient_sum(const IntPoly& p) {
  std::int64_t s = 0;
  for (auto c : p) s = checked_add(s, c);
  return s;
}

// p(y) = (1 - y) q(y); p(1) must be zero.
IntPoly divide_one_minus_y(const IntPoly& p) {
  // Synthetic division by (y - 1), then flip the sign.
  const std::size_t n = p.size() - 1;
  IntPoly q(n, 0);
  std::int64_t carry = 0;
  for (std::size_t k = n; k >= 1; --k) {
    carry = checked_add(p[k], carry);
    q[k - 1] = carry;
  }
  for (auto& c : q) c = -c;
  trim(q);
  return q;
}

QuadCoeffs evaluate_coeffs(int d, double y) {
  const SignPolynomials polys = sign_polynomials(d);
  QuadCoeffs c;
  c.d = d;
  c.y = y;
  c.alpha = factor_endpoints(polys.alpha).evaluate(y);
  c.beta = factor_endpoints(polys.beta).evaluate(y);
  c.gamma = factor_endpoints(polys.gamma).evaluate(y);
  return c;
}

Interval interval_horner(const IntPoly& q, Interval y) {
  Interval acc(static_cast<double>(q.back()));
  for (std::size_t i = q.size() - 1; i-- > 0;) {
    acc = acc * y + Interval(static_cast<double>(q[i]));
  }
  return acc;
}

// True when every value of q on [0, 1] is proven negative.
bool certify_negative(const FactoredPoly& f, std::int64_t max_cells,
                      std::int64_t& cells) {
  if (f.is_zero()) return false;
  for (auto c : f.quotient) {
    if (c >= kExactDoubleLimit || c <= -kExactDoubleLimit) return false;
  }
  std::vector<std::pair<double, double>> stack{{0.0, 1.0}};
  while (!stack.empty()) {
    const auto [lo, hi] = stack.back();
    stack.pop_back();
    if (++cells > max_cells) return false;
    const Interval enclosure = interval_horner(f.quotient, Interval(lo, hi));
    if (enclosure.hi() < 0.0) continue;
    const double mid = 0.5 * (lo + hi);
    if (interval_horner(f.quotient, Interval(mid)).lo() >= 0.0) return false;
    if (!(lo < mid && mid < hi)) return false;
    stack.emplace_back(mid, hi);
    stack.emplace_back(lo, mid);
  }
  return true;
}

void check_dimension(int d) {
  if (d < 2) fail(ErrorKind::domain, "dimension must be at least 2");
}

}  // namespace

FactoredPoly factor_endpoints(IntPoly p) {
  trim(p);
  FactoredPoly f;
  if (p.empty()) return f;
  while (p.front() == 0) {
    p.erase(p.begin());
    ++f.y_power;
  }
  while (p.size() > 1 && coefficient_sum(p) == 0) {
    p = divide_one_minus_y(p);
    ++f.one_minus_y_power;
  }
  f.quotient = std::move(p);
  return f;
}

double FactoredPoly::evaluate(double y) const {
  if (is_zero()) return 0.0;
  return ipow(y, y_power) * ipow(1.0 - y, one_minus_y_power) *
         compensated_horner(quotient, y);
}

SignPolynomials sign_polynomials(int d) {
  check_dimension(d);
  const auto n = static_cast<std::int64_t>(d - 1);
  SignPolynomials s;
  // alpha = 2 - 2y^(d-1) - (d-1)(1-y)(1+y^(d-2))
  s.alpha = add(add(IntPoly{2}, monomial(d - 1, -2)),
                scale(mul(IntPoly{1, -1}, add(IntPoly{1}, monomial(d - 2))), -n));
  // beta = (d-1)(1-y)^2(1-y^(d-2))
  s.beta = scale(mul(one_minus_y_pow(2), add(IntPoly{1}, monomial(d - 2, -1))), n);
  // gamma = -2(1-y)^2(1-y^(d-1))
  s.gamma = scale(mul(one_minus_y_pow(2), add(IntPoly{1}, monomial(d - 1, -1))), -2);
  s.two_alpha_beta = add(scale(s.alpha, 2), s.beta);
  s.alpha_beta_gamma = add(add(s.alpha, s.beta), s.gamma);
  return s;
}

double compensated_horner(std::span<const std::int64_t> coefficients, double y) {
  if (coefficients.empty()) return 0.0;
  double s = static_cast<double>(coefficients.back());
  double c = 0.0;
  for (std::size_t i = coefficients.size() - 1; i-- > 0;) {
    const double p = s * y;
    const double p_err = std::fma(s, y, -p);
    const double a = static_cast<double>(coefficients[i]);
    const double sum = p + a;
    const double z = sum - p;
    const double sum_err = (p - (sum - z)) + (a - z);
    s = sum;
    c = c * y + (p_err + sum_err);
  }
  return s + c;
}

QuadCoeffs quad_coeffs(int d, double y) {
  check_dimension(d);
  if (!(y > 0.0 && y < 1.0)) {
    fail(ErrorKind::domain, "y must lie in the open interval (0, 1)");
  }
  return evaluate_coeffs(d, y);
}

QuadCoeffs quad_coeffs_closed(int d, double y) {
  check_dimension(d);
  if (!(y >= 0.0 && y <= 1.0)) {
    fail(ErrorKind::domain, "y must lie in [0, 1]");
  }
  return evaluate_coeffs(d, y);
}

std::vector<double> quad_roots(const QuadCoeffs& c) {
  const double m = std::max({std::abs(c.alpha), std::abs(c.beta), std::abs(c.gamma)});
  if (m == 0.0) fail(ErrorKind::degenerate, "all quadratic coefficients vanish");
  const double a = c.alpha / m;
  const double b = c.beta / m;
  const double g = c.gamma / m;

  std::vector<double> roots;
  if (a == 0.0) {
    if (b != 0.0) roots.push_back(-g / b);
    return roots;
  }
  const double disc = std::fma(b, b, -4.0 * a * g);
  if (disc < 0.0) return roots;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {
    roots.push_back(0.0);
    roots.push_back(0.0);
    return roots;
  }
  roots.push_back(q / a);
  roots.push_back(g / q);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> default_y_grid(int n) {
  if (n < 2) fail(ErrorKind::domain, "grid needs at least two points");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 200);
  const double lo = 1e-6;
  const double hi = 1.0 - 1e-6;
  for (int i = 0; i < n; ++i) {
    grid.push_back(lo + (hi - lo) * i / (n - 1));
  }
  for (int i = 0; i < 100; ++i) {
    const double e = -1.0 - 11.0 * i / 99.0;  // 1e-1 .. 1e-12
    const double near = std::pow(10.0, e);
    grid.push_back(near);
    grid.push_back(1.0 - near);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

CertificateReport sign_certificates(int d, std::span<const double> y_grid) {
  check_dimension(d);
  if (y_grid.empty()) fail(ErrorKind::domain, "empty y grid");
  const SignPolynomials polys = sign_polynomials(d);
  const FactoredPoly alpha = factor_endpoints(polys.alpha);
  const FactoredPoly two_ab = factor_endpoints(polys.two_alpha_beta);
  const FactoredPoly abc = factor_endpoints(polys.alpha_beta_gamma);

  CertificateReport r;
  r.d = d;
  r.grid_size = static_cast<int>(y_grid.size());
  r.alpha_asserted = d >= 4;
  r.pair_asserted = d >= 6;
  r.min_margin_alpha = -std::numeric_limits<double>::infinity();
  r.min_margin_2ab = -std::numeric_limits<double>::infinity();
  r.min_margin_abc = -std::numeric_limits<double>::infinity();

  for (double y : y_grid) {
    if (!(y > 0.0 && y < 1.0)) {
      fail(ErrorKind::domain, "grid point " + std::to_string(y) +
                                  " outside the open interval (0, 1)");
    }
    r.min_margin_alpha = std::max(r.min_margin_alpha, alpha.evaluate(y));
    r.min_margin_2ab = std::max(r.min_margin_2ab, two_ab.evaluate(y));
    r.min_margin_abc = std::max(r.min_margin_abc, abc.evaluate(y));

    // Roots x >= 1 are searched in s = x - 1, whose coefficients alpha,
    // 2 alpha + beta and alpha + beta + gamma are each evaluated directly, so a
    // double root near x = 1 is not manufactured by cancellation.
    const QuadCoeffs shifted{d, y, alpha.evaluate(y), two_ab.evaluate(y),
                             abc.evaluate(y)};
    if (shifted.alpha == 0.0 && shifted.beta == 0.0 && shifted.gamma == 0.0) continue;
    const std::vector<double> roots = quad_roots(shifted);
    if (!roots.empty() && roots.back() >= 0.0) {
      ++r.grid_points_with_root;
      r.max_root_deviation_from_y_plus_1 =
          std::max(r.max_root_deviation_from_y_plus_1, std::abs(roots.back() - y));
    }
  }
  r.roots_excluded =
      r.min_margin_alpha < 0.0 && r.min_margin_2ab < 0.0 && r.min_margin_abc < 0.0;
  return r;
}

RigorousCertificate certify_rigorous(int d, std::int64_t max_cells) {
  check_dimension(d);
  const SignPolynomials polys = sign_polynomials(d);
  RigorousCertificate c;
  c.alpha = certify_negative(factor_endpoints(polys.alpha), max_cells, c.cells);
  c.two_alpha_beta =
      certify_negative(factor_endpoints(polys.two_alpha_beta), max_cells, c.cells);
  c.alpha_beta_gamma =
      certify_negative(factor_endpoints(polys.alpha_beta_gamma), max_cells, c.cells);
  return c;
}

}  // namespace hyperslice
