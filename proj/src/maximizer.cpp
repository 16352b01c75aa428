#include "hyperslice/maximizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hyperslice/certificates.hpp"
#include "hyperslice/errors.hpp"
#include "hyperslice/montecarlo.hpp"
#include "hyperslice/parallel.hpp"
#include "hyperslice/summation.hpp"
#include "hyperslice/vertex_sum.hpp"

namespace hyperslice {

namespace {

constexpr double kArmijo = 0.25;
constexpr double kFiniteDifferenceStep = 1e-6;

std::size_t cut_coordinate(const CutClassification& cut) {
  const Vertex& tip = cut.vertices.back();
  return static_cast<std::size_t>(
      std::find(tip.begin(), tip.end(), std::uint8_t{1}) - tip.begin());
}

bool all_positive(std::span<const double> a) {
  return std::all_of(a.begin(), a.end(), [](double x) { return x > 0.0; });
}

std::vector<double> finite_difference_gradient(std::span<const double> a,
                                               double t, double lambda) {
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> grad(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double h = std::min(kFiniteDifferenceStep, 0.5 * a[i]);
    if (h <= 0.0) {
      grad[i] = 0.0;
      continue;
    }
    x[i] = a[i] + h;
    const double up = lagrangian_value(x, t, lambda);
    x[i] = a[i] - h;
    const double down = lagrangian_value(x, t, lambda);
    x[i] = a[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

struct StartResult {
  std::vector<double> a;
  double value = 0.0;
  bool converged = false;
};

std::vector<double> start_direction(int d, std::uint64_t seed, int index) {
  if (index == 0) return diagonal_direction(d);
  CounterRng rng(seed, static_cast<std::uint64_t>(index));
  std::vector<double> w(static_cast<std::size_t>(d));
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (double& x : w) x = std::sqrt(x / total);
  return w;
}

// Projection onto the sphere within the orthant: clamp, then renormalize.
// Returns false when fewer than two coordinates survive.
bool project(std::vector<double>& a) {
  int zeros = 0;
  for (double& x : a) {
    if (x <= 0.0) {
      x = 0.0;
      ++zeros;
    }
  }
  if (zeros >= static_cast<int>(a.size()) - 1) return false;
  const double n = norm2(a);
  for (double& x : a) x /= n;
  return true;
}

StartResult ascend(double t, std::vector<double> a,
                   const MaximizeOptions& options) {
  StartResult r;
  double value = section_objective(a, t);
  if (!(value > 0.0)) {
    r.a = std::move(a);
    return r;
  }
  // Ascent on log V: same maximizers, steps independent of the volume scale.
  for (int it = 0; it < options.max_iterations; ++it) {
    const SectionSpec spec = make_section_spec(a, t);
    std::vector<double> g = lagrangian_gradient(spec, 0.0).grad;
    for (double& x : g) x /= value;
    const double radial = dot(g, a);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= radial * a[i];
    const double gnorm = norm2(g);

    bool accepted = false;
    for (double step = options.initial_step;
         step * gnorm >= options.step_tolerance; step *= 0.5) {
      std::vector<double> candidate(a);
      for (std::size_t i = 0; i < a.size(); ++i) candidate[i] += step * g[i];
      if (!project(candidate)) continue;
      const double v = section_objective(candidate, t);
      if (v > 0.0 && std::log(v) - std::log(value) >= kArmijo * step * gnorm * gnorm) {
        a = std::move(candidate);
        value = v;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      r.converged = true;
      break;
    }
  }
  r.a = std::move(a);
  r.value = value;
  return r;
}

}  // namespace

double closed_form_max(int d, double t) {
  if (d < 2) fail(ErrorKind::domain, "dimension must be at least 2");
  if (!(t >= 0.0)) fail(ErrorKind::domain, "t must be nonnegative");
  const double root_d = std::sqrt(static_cast<double>(d));
  const double gap = 0.5 * root_d - t;
  if (gap <= 0.0) return 0.0;
  return std::pow(static_cast<double>(d), 0.5 * d) / factorial(d - 1) *
         ipow(gap, d - 1);
}

double section_objective(std::span<const double> a, double t) {
  const double b = sigma(a) * 0.5 - t;
  return section_volume(a, b).value / norm2(a);
}

double lagrangian_value(std::span<const double> a, double t, double lambda) {
  const double n = norm2(a);
  return section_objective(a, t) + lambda * (n * n - 1.0);
}

LagrangianGradient lagrangian_gradient(const SectionSpec& spec, double lambda,
                                       bool allow_fallback) {
  const CutClassification cut = classify_cut(spec);
  const auto& a = spec.a();
  const int d = spec.d();
  const double b = spec.b();
  LagrangianGradient out;
  out.grad.resize(a.size());

  const bool analytic = (cut.kind == CutKind::corner || cut.kind == CutKind::edge) &&
                        b > 0.0 && all_positive(a) && d >= 3;
  if (!analytic) {
    if (!allow_fallback) {
      fail(ErrorKind::regime, "analytic gradient needs a corner or edge cut, got " +
                                  std::string(to_string(cut.kind)));
    }
    out.grad = finite_difference_gradient(a, spec.t(), lambda);
    out.finite_difference = true;
    return out;
  }

  const double pi_a = pi_product(a);
  const double p = factorial(d - 1) * pi_a;
  const double q = 2.0 * factorial(d - 2) * pi_a;
  if (cut.kind == CutKind::corner) {
    const double value = ipow(b, d - 1) / p;
    const double shift = (d - 1) * 0.5 * ipow(b, d - 2) / p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      out.grad[i] = -value / a[i] + shift + 2.0 * a[i] * lambda;
    }
    return out;
  }

  const std::size_t c = cut_coordinate(cut);
  const double near = b - a[c];
  const double value = (ipow(b, d - 1) - ipow(near, d - 1)) / p;
  const double plus = (ipow(b, d - 2) + ipow(near, d - 2)) / q;
  const double minus = (ipow(b, d - 2) - ipow(near, d - 2)) / q;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.grad[i] = -value / a[i] + (i == c ? plus : minus) + 2.0 * a[i] * lambda;
  }
  return out;
}

std::vector<PairResidual> pair_condition_check(const SectionSpec& spec) {
  const CutClassification cut = classify_cut(spec);
  const auto& a = spec.a();
  const int d = spec.d();
  const double b = spec.b();
  if ((cut.kind != CutKind::corner && cut.kind != CutKind::edge) ||
      !all_positive(a)) {
    fail(ErrorKind::regime, "pair conditions need a corner or edge cut, got " +
                                std::string(to_string(cut.kind)));
  }
  std::vector<PairResidual> out;
  const double half = 0.5 * (d - 1);
  if (cut.kind == CutKind::corner) {
    for (int j = 0; j < d; ++j) {
      for (int k = j + 1; k < d; ++k) {
        const double aj = a[static_cast<std::size_t>(j)];
        const double ak = a[static_cast<std::size_t>(k)];
        out.push_back({j, k, -b * (ak / aj - aj / ak) + half * (ak - aj)});
      }
    }
    return out;
  }

  const auto c = static_cast<int>(cut_coordinate(cut));
  const double y = 1.0 - a[static_cast<std::size_t>(c)] / b;
  const QuadCoeffs q = quad_coeffs_closed(d, std::clamp(y, 0.0, 1.0));
  const double outer = 1.0 - ipow(y, d - 1);
  const double inner = 1.0 - ipow(y, d - 2);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      const double aj = a[static_cast<std::size_t>(j)];
      const double ak = a[static_cast<std::size_t>(k)];
      double r;
      if (j == c || k == c) {
        const double x = (j == c ? ak : aj) / b;
        r = (q.alpha * x + q.beta) * x + q.gamma;
      } else {
        r = -outer * (ak / aj - aj / ak) + half * inner * (ak - aj) / b;
      }
      out.push_back({j, k, r});
    }
  }
  return out;
}

OptimizerReport maximize_section_volume(int d, double t,
                                        const MaximizeOptions& options) {
  if (d < 2) fail(ErrorKind::invalid_input, "dimension must be at least 2");
  if (options.starts < 1) fail(ErrorKind::invalid_input, "need at least one start");
  if (!(t > 0.5) || !std::isfinite(t)) {
    fail(ErrorKind::domain, "maximization needs t > 1/2");
  }
  OptimizerReport report;
  report.d = d;
  report.t = t;
  report.starts = options.starts;
  report.closed_form_V = closed_form_max(d, t);
  report.best_a = diagonal_direction(d);
  if (t >= 0.5 * std::sqrt(static_cast<double>(d))) {
    report.degenerate = true;
    return report;
  }

  std::vector<StartResult> results(static_cast<std::size_t>(options.starts));
  parallel_for(results.size(), [&](std::size_t i) {
    results[i] = ascend(t, start_direction(d, options.seed, static_cast<int>(i)),
                        options);
  });

  std::size_t best = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].converged && results[i].value > 0.0) ++report.converged_starts;
    if (results[i].value > results[best].value) best = i;
  }
  if (!(results[best].value > 0.0)) {
    report.degenerate = true;
    return report;
  }

  report.best_a = results[best].a;
  report.best_V = results[best].value;
  report.angle_to_diagonal = angle_between(report.best_a, diagonal_direction(d));

  const SectionSpec spec = make_section_spec(report.best_a, t);
  const std::vector<double> g = lagrangian_gradient(spec, 0.0).grad;
  const auto& a = spec.a();
  report.lagrange_lambda = -dot(g, a) / (2.0 * dot(a, a));
  std::vector<double> residual(g);
  for (std::size_t i = 0; i < a.size(); ++i) {
    residual[i] += 2.0 * report.lagrange_lambda * a[i];
  }
  report.residual_norm = norm2(residual);
  return report;
}

DecayCheck decay_inequality_check(int d, double t) {
  if (d < 5) fail(ErrorKind::domain, "decay inequality needs d >= 5");
  const double root_d = std::sqrt(static_cast<double>(d));
  const double root_d1 = std::sqrt(static_cast<double>(d - 1));
  const double lo = 0.5 * std::sqrt(static_cast<double>(d - 2));
  const double hi = 0.5 * root_d1;
  constexpr double slack = 1e-12;
  if (!(t >= lo * (1.0 - slack) && t <= hi * (1.0 + slack))) {
    fail(ErrorKind::domain, "t outside [sqrt(d-2)/2, sqrt(d-1)/2]");
  }
  const double dd = static_cast<double>(d);
  DecayCheck out;
  out.lhs = std::exp(0.5 * dd * std::log(dd) - 0.5 * (dd + 1.0) * std::log(dd - 1.0));
  const double upper = std::max(0.0, root_d1 - 2.0 * t);
  out.rhs = 2.0 * ipow(upper, d - 2) / ipow(root_d - 2.0 * t, d - 1);
  out.holds = out.lhs > out.rhs;
  out.direct_lhs = closed_form_max(d, t);
  out.direct_rhs = closed_form_max(d - 1, t);
  return out;
}

}  // namespace hyperslice
