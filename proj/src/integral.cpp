#include "hyperslice/integral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hyperslice/errors.hpp"
#include "hyperslice/summation.hpp"

namespace hyperslice {

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (QUADPACK qk15). Gauss nodes are the odd-indexed Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kMaxDepth = 12;

std::vector<double> positive_coordinates(std::span<const double> a) {
  std::vector<double> out;
  for (double x : a) {
    if (x > 0.0) out.push_back(x);
  }
  return out;
}

struct PanelRule {
  double kronrod;
  double gauss;
  double magnitude;
};

class Integrand {
 public:
  Integrand(std::span<const double> a, double omega)
      : a_(positive_coordinates(a)), omega_(omega) {}

  double operator()(double u) const {
    return sinc_product_integrand(a_, omega_, u);
  }

  const std::vector<double>& coordinates() const { return a_; }

 private:
  std::vector<double> a_;
  double omega_;
};

PanelRule gauss_kronrod(const Integrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double magnitude = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[static_cast<std::size_t>(j)] * (f1 + f2);
    magnitude += kWgk[static_cast<std::size_t>(j)] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * (f1 + f2);
  }
  return {kronrod * half, gauss * half, magnitude * half};
}

struct Accumulator {
  CompensatedSum<> value;
  double err = 0.0;
  std::int64_t panels = 0;
};

void integrate_panel(const Integrand& f, double lo, double hi, double density,
                     int depth, std::int64_t max_panels, Accumulator& acc) {
  const PanelRule r = gauss_kronrod(f, lo, hi);
  const double estimate = std::abs(r.kronrod - r.gauss);
  const double floor =
      50.0 * std::numeric_limits<double>::epsilon() * r.magnitude;
  if (estimate <= std::max(density * (hi - lo), floor) || depth >= kMaxDepth) {
    acc.value.add(r.kronrod);
    acc.err += estimate;
    if (++acc.panels > max_panels) {
      fail(ErrorKind::convergence,
           "quadrature needs more than " + std::to_string(max_panels) +
               " panels");
    }
    return;
  }
  const double mid = 0.5 * (lo + hi);
  integrate_panel(f, lo, mid, density, depth + 1, max_panels, acc);
  integrate_panel(f, mid, hi, density, depth + 1, max_panels, acc);
}

double one_sided_product_tail(std::vector<double> a, double N) {
  // prod_i min{1, 1/(a_i u)}: factor i switches on at u = 1/a_i.
  std::sort(a.begin(), a.end(), std::greater<>());
  std::vector<double> breaks;
  breaks.reserve(a.size());
  for (double x : a) breaks.push_back(1.0 / x);

  double total = 0.0;
  double lo = N;
  double active_product = 1.0;
  std::size_t active = 0;
  while (active < a.size() && breaks[active] <= lo) {
    active_product *= a[active];
    ++active;
  }
  while (true) {
    const double hi = active < a.size() ? breaks[active]
                                        : std::numeric_limits<double>::infinity();
    const auto k = static_cast<double>(active);
    if (active == 0) {
      total += hi - lo;
    } else if (active == 1) {
      total += std::log(hi / lo) / active_product;
    } else {
      const double upper = std::isinf(hi) ? 0.0 : std::pow(hi, 1.0 - k);
      total += (std::pow(lo, 1.0 - k) - upper) / ((k - 1.0) * active_product);
    }
    if (active == a.size()) break;
    active_product *= a[active];
    ++active;
    lo = hi;
  }
  return total;
}

}  // namespace

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

double sinc_product_integrand(std::span<const double> a, double omega,
                              double u) {
  double p = std::cos(omega * u);
  for (double x : a) p *= sinc(x * u);
  return p;
}

double tail_bound(const QuadratureConfig& cfg, double N) {
  return 2.0 * cfg.norm / (std::numbers::pi * cfg.m2 * N);
}

double product_tail_bound(std::span<const double> a, double norm, double N) {
  std::vector<double> positive = positive_coordinates(a);
  if (positive.size() < 2) return std::numeric_limits<double>::infinity();
  return 2.0 * norm / std::numbers::pi *
         one_sided_product_tail(std::move(positive), N);
}

double truncation_point(std::span<const double> a, const QuadratureConfig& cfg) {
  const double target = 0.5 * cfg.abs_tol;
  const double coarse = 2.0 * cfg.norm / (std::numbers::pi * cfg.m2 * target);
  if (product_tail_bound(a, cfg.norm, coarse) > target) return coarse;
  double lo = 1e-6;
  double hi = coarse;
  if (product_tail_bound(a, cfg.norm, lo) <= target) return lo;
  while (hi / lo > 1.0 + 1e-6) {
    const double mid = std::sqrt(lo * hi);
    if (product_tail_bound(a, cfg.norm, mid) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

QuadratureConfig QuadratureConfig::for_spec(const SectionSpec& spec,
                                            double abs_tol) {
  QuadratureConfig cfg;
  cfg.abs_tol = abs_tol;
  std::vector<double> positive = positive_coordinates(spec.a());
  if (positive.size() < 2) {
    fail(ErrorKind::nonintegrable_tail,
         "the sinc-product integral needs at least two positive coordinates");
  }
  std::sort(positive.begin(), positive.end());
  cfg.m2 = positive[0] * positive[1];
  cfg.norm = norm2(spec.a());
  cfg.trunc_N = truncation_point(spec.a(), cfg);
  return cfg;
}

QuadratureEstimate integrate_sinc_product(std::span<const double> a,
                                          double omega, double lo, double hi,
                                          double tol,
                                          const QuadratureConfig& cfg) {
  if (!(tol > 0.0)) fail(ErrorKind::invalid_input, "tolerance must be positive");
  const Integrand f(a, omega);
  if (hi <= lo) return {};

  const double fastest = sigma(f.coordinates()) + std::abs(omega);
  const double width = cfg.panel_scale * std::numbers::pi / fastest;
  const double count = std::ceil((hi - lo) / width);
  if (count > static_cast<double>(cfg.max_panels)) {
    fail(ErrorKind::convergence,
         "truncation point " + std::to_string(hi) + " needs more than " +
             std::to_string(cfg.max_panels) + " panels");
  }
  const auto panels = static_cast<std::int64_t>(count);
  const double step = (hi - lo) / static_cast<double>(panels);
  const double density = tol / (hi - lo);

  Accumulator acc;
  for (std::int64_t k = 0; k < panels; ++k) {
    const double p_lo = lo + step * static_cast<double>(k);
    const double p_hi = k + 1 == panels ? hi : p_lo + step;
    integrate_panel(f, p_lo, p_hi, density, 0, cfg.max_panels, acc);
  }
  return {acc.value.value(), acc.err, acc.panels};
}

VolumeResult section_volume_integral(const SectionSpec& spec,
                                     const QuadratureConfig& cfg) {
  QuadratureConfig c = QuadratureConfig::for_spec(spec, cfg.abs_tol);
  c.max_panels = cfg.max_panels;
  c.panel_scale = cfg.panel_scale;
  if (cfg.trunc_N > 0.0) c.trunc_N = cfg.trunc_N;
  if (!(c.abs_tol > 0.0)) fail(ErrorKind::invalid_input, "abs_tol must be positive");

  const double omega = 2.0 * spec.t() * c.norm;
  const double scale = 2.0 * c.norm / std::numbers::pi;
  const QuadratureEstimate q = integrate_sinc_product(
      spec.a(), omega, 0.0, c.trunc_N, 0.5 * c.abs_tol / scale, c);

  VolumeResult out;
  out.method = VolumeMethod::integral;
  out.value = std::max(0.0, scale * q.value);
  out.err = scale * q.err +
            std::min(tail_bound(c, c.trunc_N),
                     product_tail_bound(spec.a(), c.norm, c.trunc_N));
  if (spec.d() <= EnumerationLimits{}.max_dimension) {
    out.cut = classify_cut(spec);
  } else {
    out.cut.count_below = -1;
    out.cut.kind = CutKind::other;
  }
  return out;
}

VolumeResult section_volume_integral(const SectionSpec& spec, double abs_tol) {
  QuadratureConfig cfg;
  cfg.abs_tol = abs_tol;
  return section_volume_integral(spec, cfg);
}

}  // namespace hyperslice
