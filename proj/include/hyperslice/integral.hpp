#pragma once

#include <cstdint>
#include <span>

#include "hyperslice/geometry.hpp"

namespace hyperslice {

/// Controls for the sinc-product quadrature. `for_spec` fills the derived
/// fields (m2, norm, trunc_N).
struct QuadratureConfig {
  double abs_tol = 1e-9;
  double trunc_N = 0.0;
  std::int64_t max_panels = 20'000'000;
  /// Product of the two smallest positive coordinates of a.
  double m2 = 0.0;
  double norm = 1.0;
  /// Base panel width as a fraction of the half period of the fastest
  /// component; 0.5 halves every panel.
  double panel_scale = 1.0;

  static QuadratureConfig for_spec(const SectionSpec& spec,
                                   double abs_tol = 1e-9);
};

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// prod_i sinc(a_i u) * cos(omega u).
double sinc_product_integrand(std::span<const double> a, double omega,
                              double u);

/// 2 (|a|/pi) / (m2 N): bound on both tails beyond |u| = N from
/// |integrand| <= min{1, 1 / (m2 u^2)}.
double tail_bound(const QuadratureConfig& cfg, double N);

/// Same quantity using the full bound prod_i min{1, 1/(a_i u)}, integrated
/// piecewise; decays like N^(1-d).
double product_tail_bound(std::span<const double> a, double norm, double N);

/// Smallest N (within a factor 1 + 1e-6) whose tail bound is at most
/// abs_tol / 2, taking the better of the two bounds.
double truncation_point(std::span<const double> a, const QuadratureConfig& cfg);

struct QuadratureEstimate {
  double value = 0.0;
  double err = 0.0;
  std::int64_t panels = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of the integrand over [lo, hi].
/// `tol` is the target for the summed panel error estimates.
QuadratureEstimate integrate_sinc_product(std::span<const double> a,
                                          double omega, double lo, double hi,
                                          double tol, const QuadratureConfig& cfg);

/// (|a|/pi) * integral over R of prod_i sinc(a_i u) cos(2 t |a| u) du.
VolumeResult section_volume_integral(const SectionSpec& spec,
                                     const QuadratureConfig& cfg);
VolumeResult section_volume_integral(const SectionSpec& spec,
                                     double abs_tol = 1e-9);

}  // namespace hyperslice
