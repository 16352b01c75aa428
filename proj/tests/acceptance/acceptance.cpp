// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hyperslice/certificates.hpp"
#include "hyperslice/integral.hpp"
#include "hyperslice/maximizer.hpp"
#include "hyperslice/montecarlo.hpp"
#include "hyperslice/vertex_sum.hpp"
#include "oracles.hpp"

using namespace hyperslice;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<double> random_direction(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  std::vector<double> a(static_cast<std::size_t>(d));
  for (double& x : a) {
    do x = std::abs(g(rng));
    while (x == 0.0);
  }
  const double n = norm2(a);
  for (double& x : a) x /= n;
  return a;
}

double sqrt_half(double x) { return 0.5 * std::sqrt(x); }

// Open interval (lo, hi) sampled at cell midpoints.
std::vector<double> open_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * (i + 0.5) / n);
  return g;
}

Outcome cross_method() {
  std::mt19937_64 rng(20240601);
  int total = 0, integral_bad = 0, mc_outside = 0;
  double worst_integral = 0.0;
  for (int d = 3; d <= 8; ++d) {
    for (int i = 0; i < 100; ++i) {
      const std::vector<double> a = random_direction(rng, d);
      std::uniform_real_distribution<double> ut(0.0, 0.5 * sigma(a));
      double t = 0.0;
      while (t == 0.0) t = ut(rng);
      const SectionSpec s = make_section_spec(a, t);
      const double exact = section_volume_vertex_sum(s).value;
      const double quad = section_volume_integral(s, 1e-7).value;
      const double dev = std::abs(exact - quad) / std::max(1.0, exact);
      worst_integral = std::max(worst_integral, dev);
      integral_bad += dev > 1e-6;
      const McEstimate m = mc_section_volume(s, 1'000'000, 1000u * d + i);
      mc_outside += std::abs(m.estimate - exact) > 3.0 * m.std_error;
      ++total;
    }
  }
  // Three standard errors cover 99.7% of honest estimates; more than 1% of
  // misses signals a bias.
  const bool pass = integral_bad == 0 && mc_outside <= total / 100;
  return {pass, fmt("%d specs; worst |sum-integral|/max(1,V) = %.2e; MC outside 3 sigma: %d",
                    total, worst_integral, mc_outside)};
}

Outcome diagonal_maximizer(const std::vector<int>& dims, bool edge_range) {
  bool pass = true;
  double worst_angle = 0.0, worst_rel = 0.0;
  int runs = 0;
  for (int d : dims) {
    const double lo = sqrt_half(edge_range ? d - 2.0 : d - 1.0);
    const double hi = sqrt_half(d);
    for (double t : open_grid(lo, hi, 10)) {
      const OptimizerReport r = maximize_section_volume(d, t);
      const double rel = std::abs(r.best_V - r.closed_form_V) / r.closed_form_V;
      worst_angle = std::max(worst_angle, r.angle_to_diagonal);
      worst_rel = std::max(worst_rel, rel);
      pass = pass && !r.degenerate && r.angle_to_diagonal < 1e-4 && rel < 1e-9;
      ++runs;
    }
  }
  return {pass, fmt("%d runs x 64 starts; worst angle %.2e; worst relative gap %.2e", runs,
                    worst_angle, worst_rel)};
}

Outcome closed_form() {
  double worst = 0.0;
  for (int d = 3; d <= 12; ++d) {
    for (double t : open_grid(sqrt_half(d - 1.0), sqrt_half(d), 20)) {
      const double v = section_volume_vertex_sum(SectionSpec::diagonal(d, t)).value;
      const double c = std::pow(static_cast<double>(d), 0.5 * d) / factorial(d - 1) *
                       std::pow(sqrt_half(d) - t, d - 1);
      worst = std::max(worst, std::abs(v - c) / c);
    }
  }
  return {worst <= 1e-12, fmt("200 points; worst relative deviation %.2e", worst)};
}

Outcome decay() {
  bool all = true;
  double min_gap = 1e300;
  for (int d = 5; d <= 60; ++d) {
    const double lo = sqrt_half(d - 2.0), hi = sqrt_half(d - 1.0);
    for (int i = 0; i < 100; ++i) {
      const DecayCheck k = decay_inequality_check(d, lo + (hi - lo) * i / 99.0);
      all = all && k.holds;
      min_gap = std::min(min_gap, k.lhs - k.rhs);
    }
  }
  const DecayCheck k = decay_inequality_check(5, std::sqrt(3.0) / 2);
  const bool anchor = k.lhs > 0.7 && k.rhs < 0.7;
  return {all && anchor, fmt("5600 points, min lhs-rhs %.3e; d=5 t=sqrt(3)/2: lhs %.4f rhs %.4f",
                             min_gap, k.lhs, k.rhs)};
}

Outcome signs() {
  const std::vector<double> grid = default_y_grid(10000);
  bool pass = true;
  double worst = -1e300;
  for (int d = 6; d <= 40; ++d) {
    const CertificateReport r = sign_certificates(d, grid);
    worst = std::max({worst, r.min_margin_alpha, r.min_margin_2ab, r.min_margin_abc});
    pass = pass && r.roots_excluded;
  }
  double alpha45 = -1e300;
  for (int d : {4, 5}) {
    const CertificateReport r = sign_certificates(d, grid);
    alpha45 = std::max(alpha45, r.min_margin_alpha);
  }
  pass = pass && alpha45 < 0.0;
  bool rigorous = true;
  for (int d = 6; d <= 12; ++d) rigorous = rigorous && certify_rigorous(d).certified();
  return {pass && rigorous,
          fmt("d=6..40 max expression %.3e; d=4,5 max alpha %.3e; rigorous d=6..12 %s", worst,
              alpha45, rigorous ? "certified" : "FAILED")};
}

Outcome d5_roots() {
  double worst = 0.0;
  bool shape = true;
  for (int i = 0; i < 1000; ++i) {
    const double y = (i + 0.5) / 1000.0;
    const auto r = quad_roots(quad_coeffs(5, y));
    if (r.size() != 2) {
      shape = false;
      continue;
    }
    worst = std::max({worst, std::abs(r[0] - (y * y + 1) / (y + 1)), std::abs(r[1] - (y + 1))});
  }
  return {shape && worst <= 1e-10, fmt("1000 y values; worst deviation %.2e", worst)};
}

Outcome gradients() {
  std::mt19937_64 rng(77);
  double worst = 0.0;
  int checked = 0;
  constexpr double kMargin = 0.02;
  for (int d : {5, 8}) {
    int counts[2] = {0, 0};
    std::uniform_real_distribution<double> ut(sqrt_half(d - 2.0), sqrt_half(d));
    for (int attempt = 0; attempt < 200000 && (counts[0] < 50 || counts[1] < 50); ++attempt) {
      std::vector<double> a = random_direction(rng, d);
      const SectionSpec s = make_section_spec(a, ut(rng));
      const CutClassification cut = classify_cut(s);
      const int slot = cut.kind == CutKind::corner ? 0 : cut.kind == CutKind::edge ? 1 : -1;
      if (slot < 0 || counts[slot] >= 50) continue;
      // Stay clear of the cell walls so the difference quotient is smooth.
      if (s.b() < kMargin ||
          classify_cut(s.a(), s.b() - kMargin).count_below != cut.count_below ||
          classify_cut(s.a(), s.b() + kMargin).count_below != cut.count_below) {
        continue;
      }
      const LagrangianGradient g = lagrangian_gradient(s, 0.0, false);
      std::vector<double> x(s.a());
      double err = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = 1e-6;
        x[i] = s.a()[i] + h;
        const double up = section_objective(x, s.t());
        x[i] = s.a()[i] - h;
        const double down = section_objective(x, s.t());
        x[i] = s.a()[i];
        const double fd = (up - down) / (2 * h);
        err = std::max(err, std::abs(fd - g.grad[i]));
        scale = std::max(scale, std::abs(fd));
      }
      worst = std::max(worst, err / scale);
      ++counts[slot];
      ++checked;
    }
    if (counts[0] < 50 || counts[1] < 50) return {false, fmt("could not sample d=%d specs", d)};
  }
  return {worst <= 1e-5, fmt("%d specs (corner and edge, d=5,8); worst relative error %.2e",
                             checked, worst)};
}

Outcome eulerian() {
  const std::vector<std::vector<int>> table{{1, 1}, {1, 4, 1}, {1, 11, 11, 1}};
  double worst = 0.0;
  bool oracle_ok = true;
  for (int d = 3; d <= 5; ++d) {
    const std::vector<double> a = diagonal_direction(d);
    for (int s = 1; s < d; ++s) {
      const int A = table[static_cast<std::size_t>(d - 3)][static_cast<std::size_t>(s - 1)];
      oracle_ok = oracle_ok && oracle::eulerian(d - 1, s - 1) == A;
      const double want = std::sqrt(static_cast<double>(d)) * A / factorial(d - 1);
      const double got = section_volume(a, s / std::sqrt(static_cast<double>(d))).value;
      worst = std::max(worst, std::abs(got - want) / want);
    }
  }
  return {oracle_ok && worst <= 1e-12,
          fmt("9 sections; worst relative deviation %.2e; table matches descent counts: %s", worst,
              oracle_ok ? "yes" : "no")};
}

Outcome derivative_identity() {
  std::mt19937_64 rng(99);
  constexpr double h = 1e-4;
  double worst = 0.0;
  int done = 0;
  for (int attempt = 0; attempt < 100000 && done < 100; ++attempt) {
    const int d = 3 + done % 4;
    const std::vector<double> a = random_direction(rng, d);
    std::uniform_real_distribution<double> ut(0.0, 0.5 * sigma(a));
    const SectionSpec s = make_section_spec(a, ut(rng));
    // Smooth cell: no vertex level within 0.05 of b.
    if (classify_cut(s.a(), s.b() - 0.05).count_below !=
        classify_cut(s.a(), s.b() + 0.05).count_below) {
      continue;
    }
    const double direct = section_volume_vertex_sum(s).value;
    worst = std::max(worst, std::abs(section_from_halfspace_derivative(s, h) - direct));
    ++done;
  }
  return {done == 100 && worst <= 1e-7,
          fmt("%d specs, d=3..6; worst absolute deviation %.2e", done, worst)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "cross-method agreement", cross_method},
      {2, "diagonal maximizer, corner regime d=3,4", [] { return diagonal_maximizer({3, 4}, false); }},
      {3, "diagonal maximizer, d=5,6,7", [] { return diagonal_maximizer({5, 6, 7}, true); }},
      {4, "closed-form diagonal volume", closed_form},
      {5, "decay inequality", decay},
      {6, "sign certificates", signs},
      {7, "d=5 quadratic roots", d5_roots},
      {8, "Lagrangian gradients", gradients},
      {9, "Eulerian diagonal sections", eulerian},
      {10, "halfspace derivative identity", derivative_identity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s -- %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
