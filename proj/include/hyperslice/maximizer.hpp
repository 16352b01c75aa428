#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hyperslice/geometry.hpp"

namespace hyperslice {

/// d^(d/2) / (d-1)! * (sqrt(d)/2 - t)^(d-1): the section volume orthogonal to
/// the diagonal whenever that hyperplane cuts a single corner. 0 for
/// t >= sqrt(d)/2.
double closed_form_max(int d, double t);

/// V(a) / |a| with b(a) = sigma(a)/2 - t, for any nonzero a >= 0 (a need not
/// be a unit vector). Evaluated with the vertex-sum formula.
double section_objective(std::span<const double> a, double t);

/// L(a) = V(a)/|a| + lambda (|a|^2 - 1).
double lagrangian_value(std::span<const double> a, double t, double lambda);

struct LagrangianGradient {
  std::vector<double> grad;
  /// Set when the cut is neither a corner nor an edge and the gradient was
  /// taken by central differences of lagrangian_value.
  bool finite_difference = false;
};

/// Gradient of L with respect to a at spec.a(). Analytic for corner and edge
/// cuts; otherwise central differences when `allow_fallback`, else
/// Error(regime).
LagrangianGradient lagrangian_gradient(const SectionSpec& spec, double lambda,
                                       bool allow_fallback = true);

struct PairResidual {
  int j = 0;
  int k = 0;
  double value = 0.0;
};

/// Reduced pairwise stationarity conditions a_k dL/da_j - a_j dL/da_k = 0.
///  corner: -b (a_k/a_j - a_j/a_k) + (d-1)/2 (a_k - a_j)
///  edge, pairs with the cut coordinate c: alpha x^2 + beta x + gamma with
///        x = a_j / b, y = 1 - a_c / b
///  edge, other pairs: the same condition scaled by (d-1)! pi(a) / b^(d-1).
/// Throws Error(regime) for other cuts.
std::vector<PairResidual> pair_condition_check(const SectionSpec& spec);

struct MaximizeOptions {
  int starts = 64;
  std::uint64_t seed = 0;
  int max_iterations = 500;
  double initial_step = 0.1;
  double step_tolerance = 1e-12;
};

struct OptimizerReport {
  int d = 0;
  double t = 0.0;
  std::vector<double> best_a;
  double best_V = 0.0;
  double closed_form_V = 0.0;
  double angle_to_diagonal = 0.0;
  double lagrange_lambda = 0.0;
  double residual_norm = 0.0;
  int starts = 0;
  int converged_starts = 0;
  /// No start reached positive volume.
  bool degenerate = false;
};

/// Multistart projected gradient ascent of the section volume over the unit
/// sphere in the nonnegative orthant. Start 0 is the diagonal; the others are
/// square roots of Dirichlet(1,...,1) samples. Requires t > 1/2; for
/// t >= sqrt(d)/2 returns a degenerate report with best_V = 0.
OptimizerReport maximize_section_volume(int d, double t,
                                        const MaximizeOptions& options = {});

struct DecayCheck {
  /// d^(d/2) / (d-1)^((d+1)/2)
  double lhs = 0.0;
  /// 2 (sqrt(d-1) - 2t)^(d-2) / (sqrt(d) - 2t)^(d-1)
  double rhs = 0.0;
  bool holds = false;
  /// closed_form_max(d, t) and closed_form_max(d - 1, t).
  double direct_lhs = 0.0;
  double direct_rhs = 0.0;
};

/// Compares the diagonal corner volumes in dimensions d and d-1 for
/// sqrt(d-2)/2 <= t <= sqrt(d-1)/2 and d >= 5; Error(domain) otherwise.
DecayCheck decay_inequality_check(int d, double t);

}  // namespace hyperslice
