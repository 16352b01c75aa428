#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hyperslice {

/// Coefficients of the edge-cut stationarity quadratic alpha x^2 + beta x +
/// gamma at parameter y:
///   alpha = 2 - 2y^(d-1) - (d-1)(1-y)(1+y^(d-2))
///   beta  = (d-1)(1-y)^2 (1-y^(d-2))
///   gamma = -2(1-y)^2 (1-y^(d-1))
struct QuadCoeffs {
  int d = 0;
  double y = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Polynomial in y with integer coefficients, lowest degree first.
using IntPoly = std::vector<std::int64_t>;

/// p(y) = y^y_power (1-y)^one_minus_y_power q(y) with q(0) != 0 and q(1) != 0,
/// or the zero polynomial when `quotient` is empty.
struct FactoredPoly {
  int y_power = 0;
  int one_minus_y_power = 0;
  IntPoly quotient;

  bool is_zero() const { return quotient.empty(); }
  double evaluate(double y) const;
};

FactoredPoly factor_endpoints(IntPoly p);

/// Exact integer polynomials for the sign conditions.
struct SignPolynomials {
  IntPoly alpha;
  IntPoly beta;
  IntPoly gamma;
  IntPoly two_alpha_beta;
  IntPoly alpha_beta_gamma;
};

SignPolynomials sign_polynomials(int d);

/// Horner's scheme with error-free transformations (twice-working-precision
/// accuracy).
double compensated_horner(std::span<const std::int64_t> coefficients, double y);

/// Evaluated from the endpoint-factored exact polynomials, so the values keep
/// full relative accuracy as y -> 1. Throws Error(domain) unless d >= 2 and
/// 0 < y < 1.
QuadCoeffs quad_coeffs(int d, double y);

/// As quad_coeffs, but also accepts the endpoints y = 0 and y = 1.
QuadCoeffs quad_coeffs_closed(int d, double y);

/// Real roots in ascending order, via the cancellation-free form of the
/// quadratic formula. Throws Error(degenerate) when all coefficients vanish.
std::vector<double> quad_roots(const QuadCoeffs& c);

struct RigorousCertificate {
  bool alpha = false;
  bool two_alpha_beta = false;
  bool alpha_beta_gamma = false;
  std::int64_t cells = 0;

  bool certified() const { return alpha && two_alpha_beta && alpha_beta_gamma; }
};

struct CertificateReport {
  int d = 0;
  int grid_size = 0;
  // Largest observed value of each expression over the grid. The conditions
  // hold on the grid when all three are negative.
  double min_margin_alpha = 0.0;
  double min_margin_2ab = 0.0;
  double min_margin_abc = 0.0;
  /// All three sign conditions hold on the grid.
  bool roots_excluded = false;
  /// Grid points where the quadratic has a root in [1, inf).
  int grid_points_with_root = 0;
  /// Largest |root - (y + 1)| over the grid points with such a root.
  double max_root_deviation_from_y_plus_1 = 0.0;
  /// Whether the negativity of alpha (d >= 4) and of 2 alpha + beta and
  /// alpha + beta + gamma (d >= 6) is asserted for this d.
  bool alpha_asserted = false;
  bool pair_asserted = false;
};

/// Uniform n points on [1e-6, 1 - 1e-6] plus 100 log-spaced points toward
/// each endpoint; sorted.
std::vector<double> default_y_grid(int n = 10000);

CertificateReport sign_certificates(int d, std::span<const double> y_grid);

/// Interval-arithmetic proof that alpha, 2 alpha + beta and alpha + beta +
/// gamma are negative on all of (0, 1): after removing the exact factors y^k
/// and (1-y)^m, the remaining quotient is enclosed on a bisection cover of
/// [0, 1] and every enclosure must lie below zero.
RigorousCertificate certify_rigorous(int d, std::int64_t max_cells = 1 << 22);

}  // namespace hyperslice
