#include "hyperslice/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hyperslice/errors.hpp"
#include "hyperslice/parallel.hpp"

namespace hyperslice {

namespace {

constexpr std::int64_t kBatchSize = 1 << 16;

void check_samples(std::int64_t n) {
  if (n < 1) fail(ErrorKind::invalid_input, "sample count must be positive");
}

template <typename BatchFn>
std::int64_t count_hits(std::int64_t n, BatchFn&& batch) {
  const auto batches = static_cast<std::size_t>((n + kBatchSize - 1) / kBatchSize);
  std::vector<std::int64_t> hits(batches, 0);
  parallel_for(batches, [&](std::size_t j) {
    const std::int64_t begin = static_cast<std::int64_t>(j) * kBatchSize;
    const std::int64_t size = std::min(kBatchSize, n - begin);
    hits[j] = batch(static_cast<std::uint64_t>(j), size);
  });
  std::int64_t total = 0;
  for (auto h : hits) total += h;
  return total;
}

McEstimate finish(std::int64_t hits, std::int64_t n, double scale) {
  McEstimate out;
  out.hits = hits;
  out.samples = n;
  const double nd = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nd;
  out.estimate = scale * p;
  // Plug-in binomial error, except that 0 or n hits would claim no
  // uncertainty at all; those use the add-one estimate (hits + 1) / (n + 2).
  const double q = (hits == 0 || hits == n) ? (static_cast<double>(hits) + 1.0) / (nd + 2.0) : p;
  out.std_error = scale * std::sqrt(q * (1.0 - q) / nd);
  return out;
}

double ball_volume(int m, double radius) {
  const double half = 0.5 * m;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0) *
         std::pow(radius, m);
}

}  // namespace

// Marsaglia's polar method: two normals per accepted pair, no trigonometry.
double CounterRng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  cached_ = v * f;
  has_cached_ = true;
  return u * f;
}

std::vector<std::vector<double>> orthonormal_complement(
    std::span<const double> a) {
  const std::size_t d = a.size();
  const auto k = static_cast<std::size_t>(
      std::max_element(a.begin(), a.end(),
                       [](double x, double y) { return std::abs(x) < std::abs(y); }) -
      a.begin());
  std::vector<double> w(a.begin(), a.end());
  w[k] -= std::copysign(1.0, a[k]);
  double ww = 0.0;
  for (double x : w) ww += x * x;
  if (!std::isfinite(ww)) fail(ErrorKind::internal, "frame construction failed");

  std::vector<std::vector<double>> rows;
  rows.reserve(d - 1);
  for (std::size_t j = 0; j < d; ++j) {
    if (j == k) continue;
    std::vector<double> row(d, 0.0);
    row[j] = 1.0;
    if (ww > 0.0) {
      for (std::size_t i = 0; i < d; ++i) row[i] -= 2.0 * w[j] * w[i] / ww;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

McEstimate mc_halfspace_volume(const SectionSpec& spec, std::int64_t n,
                               std::uint64_t seed) {
  check_samples(n);
  if (spec.b() <= 0.0) return {0.0, 0.0, 0, n};
  const std::vector<double>& a = spec.a();
  const double b = spec.b();
  const std::int64_t hits =
      count_hits(n, [&](std::uint64_t stream, std::int64_t size) {
        CounterRng rng(seed, stream);
        std::int64_t h = 0;
        for (std::int64_t s = 0; s < size; ++s) {
          double ax = 0.0;
          for (double ai : a) ax += ai * rng.uniform();
          if (ax <= b) ++h;
        }
        return h;
      });
  return finish(hits, n, 1.0);
}

McEstimate mc_section_volume(const SectionSpec& spec, std::int64_t n,
                             std::uint64_t seed) {
  check_samples(n);
  const int d = spec.d();
  const std::vector<double>& a = spec.a();
  const double b = spec.b();
  const double foot_radius2 = 0.25 * d - spec.t() * spec.t();
  if (b <= 0.0 || foot_radius2 <= 0.0) return {0.0, 0.0, 0, n};
  const int m = d - 1;
  const auto du = static_cast<std::size_t>(d);

  // Two discs in the hyperplane that contain the section; sample the smaller.
  // (1) Centered at the foot of the cube center, radius sqrt(d/4 - t^2).
  // (2) The section lies in the box prod [0, u_i], u_i = min(1, b / a_i);
  //     center on the projection of the box center, radius to the farthest
  //     box vertex.
  std::vector<double> center(du);
  for (std::size_t i = 0; i < du; ++i) center[i] = 0.5 - spec.t() * a[i];
  double radius2 = foot_radius2;
  {
    std::vector<double> u(du), c(du);
    double shift = b;
    for (std::size_t i = 0; i < du; ++i) {
      u[i] = a[i] > b ? b / a[i] : 1.0;
      shift -= a[i] * 0.5 * u[i];
    }
    double r2 = 0.0;
    for (std::size_t i = 0; i < du; ++i) {
      c[i] = 0.5 * u[i] + shift * a[i];
      r2 += std::max(c[i] * c[i], (u[i] - c[i]) * (u[i] - c[i]));
    }
    if (r2 < radius2) {
      radius2 = r2;
      center = std::move(c);
    }
  }
  const double radius = std::sqrt(radius2);

  const std::vector<std::vector<double>> rows = orthonormal_complement(a);
  std::vector<double> frame;  // row-major m x d
  frame.reserve(static_cast<std::size_t>(m) * du);
  for (const auto& row : rows) frame.insert(frame.end(), row.begin(), row.end());
  const double inv_m = 1.0 / m;

  const std::int64_t hits =
      count_hits(n, [&](std::uint64_t stream, std::int64_t size) {
        CounterRng rng(seed, stream);
        std::vector<double> g(static_cast<std::size_t>(m));
        std::vector<double> x(du);
        std::int64_t h = 0;
        for (std::int64_t s = 0; s < size; ++s) {
          double gg = 0.0;
          for (double& gj : g) {
            gj = rng.normal();
            gg += gj * gj;
          }
          const double r = radius * std::exp(std::log(rng.uniform() + 0x1.0p-54) * inv_m) /
                           std::sqrt(gg);
          std::copy(center.begin(), center.end(), x.begin());
          const double* row = frame.data();
          for (int j = 0; j < m; ++j, row += d) {
            const double c = r * g[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < du; ++i) x[i] += c * row[i];
          }
          bool inside = true;
          for (double xi : x) inside &= (xi >= 0.0) & (xi <= 1.0);
          h += inside;
        }
        return h;
      });
  return finish(hits, n, ball_volume(m, radius));
}

}  // namespace hyperslice
