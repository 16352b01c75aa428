#include "hyperslice/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "hyperslice/errors.hpp"
#include "hyperslice/summation.hpp"

namespace hyperslice {

SectionSpec make_section_spec(std::span<const double> a_raw, double t) {
  if (a_raw.size() < 2) {
    fail(ErrorKind::invalid_input,
         "dimension must be at least 2, got " + std::to_string(a_raw.size()));
  }
  if (!std::isfinite(t) || t < 0.0) {
    fail(ErrorKind::invalid_input, "t must be a finite nonnegative number");
  }
  for (double x : a_raw) {
    if (!std::isfinite(x) || x < 0.0) {
      fail(ErrorKind::invalid_input,
           "direction coordinates must be finite and nonnegative");
    }
  }
  const double n = norm2(a_raw);
  if (n == 0.0) fail(ErrorKind::invalid_input, "direction must be nonzero");

  std::vector<double> a(a_raw.begin(), a_raw.end());
  for (double& x : a) x /= n;
  const double b = sigma(a) * 0.5 - t;
  return SectionSpec(std::move(a), t, b);
}

SectionSpec SectionSpec::diagonal(int d, double t) {
  const std::vector<double> ones(static_cast<std::size_t>(std::max(d, 0)), 1.0);
  SectionSpec s = make_section_spec(ones, t);
  // sigma(a) = sqrt(d) exactly; summing the rounded coordinates would cost
  // relative accuracy in b near the vertex t = sqrt(d)/2.
  s.b_ = 0.5 * std::sqrt(static_cast<double>(d)) - t;
  return s;
}

double sigma(std::span<const double> x) { return compensated_sum(x); }

double pi_product(std::span<const double> x) {
  double p = 1.0;
  for (double v : x) p *= v;
  return p;
}

double dot(std::span<const double> x, std::span<const double> y) {
  CompensatedSum<> acc;
  for (std::size_t i = 0; i < x.size(); ++i) acc.add(x[i] * y[i]);
  return acc.value();
}

double norm2(std::span<const double> x) {
  const double scale =
      std::accumulate(x.begin(), x.end(), 0.0,
                      [](double m, double v) { return std::max(m, std::abs(v)); });
  if (scale == 0.0) return 0.0;
  CompensatedSum<> acc;
  for (double v : x) {
    const double s = v / scale;
    acc.add(s * s);
  }
  return scale * std::sqrt(acc.value());
}

double center_distance(std::span<const double> a, double b) {
  return std::abs(b - sigma(a) * 0.5) / norm2(a);
}

std::vector<double> diagonal_direction(int d) {
  return std::vector<double>(static_cast<std::size_t>(d),
                             1.0 / std::sqrt(static_cast<double>(d)));
}

double angle_between(std::span<const double> x, std::span<const double> y) {
  const double nx = norm2(x);
  const double ny = norm2(y);
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = x[i] / nx;
    const double v = y[i] / ny;
    diff += (u - v) * (u - v);
    sum += (u + v) * (u + v);
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

namespace {

void check_capacity(std::size_t d, const EnumerationLimits& limits) {
  if (d > static_cast<std::size_t>(limits.max_dimension)) {
    fail(ErrorKind::capacity,
         "dimension " + std::to_string(d) + " exceeds the enumeration limit " +
             std::to_string(limits.max_dimension));
  }
}

// Depth-first over coordinates in descending order. Every node of the search
// is a feasible subset, so the cost is O(d * |result|).
class BelowEnumerator {
 public:
  BelowEnumerator(std::span<const double> a, double slack)
      : a_(a), slack_(slack), order_(a.size()), suffix_min_(a.size() + 1),
        current_(a.size(), 0) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t i, std::size_t j) { return a[i] > a[j]; });
    suffix_min_[a.size()] = std::numeric_limits<double>::infinity();
    for (std::size_t k = a.size(); k-- > 0;) {
      suffix_min_[k] = std::min(suffix_min_[k + 1], a[order_[k]]);
    }
  }

  std::vector<Vertex> run() {
    if (slack_ >= 0.0) visit(0, 0.0);
    return std::move(found_);
  }

 private:
  void visit(std::size_t k, double partial) {
    if (k == a_.size() || partial + suffix_min_[k] > slack_) {
      found_.push_back(current_);
      return;
    }
    const std::size_t i = order_[k];
    if (partial + a_[i] <= slack_) {
      current_[i] = 1;
      visit(k + 1, partial + a_[i]);
      current_[i] = 0;
    }
    visit(k + 1, partial);
  }

  std::span<const double> a_;
  double slack_;
  std::vector<std::size_t> order_;
  std::vector<double> suffix_min_;
  Vertex current_;
  std::vector<Vertex> found_;
};

double vertex_dot(std::span<const double> a, const Vertex& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (v[i]) s += a[i];
  }
  return s;
}

int weight(const Vertex& v) {
  return static_cast<int>(std::count(v.begin(), v.end(), std::uint8_t{1}));
}

}  // namespace

std::vector<Vertex> vertices_below(std::span<const double> a, double b,
                                   EnumerationLimits limits) {
  check_capacity(a.size(), limits);
  if (b < 0.0) return {};
  // The search runs with a little slack so that membership is decided by the
  // index-order dot product alone, independently of the search order.
  const double eps = std::numeric_limits<double>::epsilon();
  const double slack =
      b + 4.0 * eps * (sigma(a) + std::abs(b)) * static_cast<double>(a.size());
  std::vector<Vertex> candidates = BelowEnumerator(a, slack).run();
  std::vector<Vertex> out;
  out.reserve(candidates.size());
  for (auto& v : candidates) {
    if (vertex_dot(a, v) <= b) out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> vertices_below(const SectionSpec& spec,
                                   EnumerationLimits limits) {
  return vertices_below(spec.a(), spec.b(), limits);
}

std::string_view to_string(CutKind kind) {
  switch (kind) {
    case CutKind::empty:
      return "empty";
    case CutKind::corner:
      return "corner";
    case CutKind::edge:
      return "edge";
    case CutKind::square3:
      return "square3";
    case CutKind::square4:
      return "square4";
    case CutKind::claw4:
      return "claw4";
    case CutKind::other:
      return "other";
  }
  return "other";
}

CutClassification classify_cut(std::span<const double> a, double b,
                               EnumerationLimits limits) {
  check_capacity(a.size(), limits);
  CutClassification out;
  if (b <= 0.0) return out;

  out.vertices = vertices_below(a, b, limits);
  out.count_below = static_cast<int>(out.vertices.size());

  int by_weight[3] = {0, 0, 0};
  bool heavy = false;
  for (const auto& v : out.vertices) {
    const int w = weight(v);
    if (w < 3) {
      ++by_weight[w];
    } else {
      heavy = true;
    }
  }

  out.kind = CutKind::other;
  if (heavy || by_weight[0] != 1) return out;
  switch (out.count_below) {
    case 1:
      out.kind = CutKind::corner;
      break;
    case 2:
      if (by_weight[1] == 1) out.kind = CutKind::edge;
      break;
    case 3:
      if (by_weight[1] == 2) out.kind = CutKind::square3;
      break;
    case 4:
      if (by_weight[1] == 2 && by_weight[2] == 1) {
        out.kind = CutKind::square4;
      } else if (by_weight[1] == 3) {
        out.kind = CutKind::claw4;
      }
      break;
    default:
      break;
  }
  return out;
}

CutClassification classify_cut(const SectionSpec& spec,
                               EnumerationLimits limits) {
  return classify_cut(spec.a(), spec.b(), limits);
}

std::vector<double> canonicalize(std::span<const double> a) {
  std::vector<double> out(a.begin(), a.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::string_view to_string(VolumeMethod method) {
  switch (method) {
    case VolumeMethod::vertex_sum:
      return "vertex_sum";
    case VolumeMethod::integral:
      return "integral";
    case VolumeMethod::monte_carlo:
      return "monte_carlo";
    case VolumeMethod::closed_form:
      return "closed_form";
  }
  return "vertex_sum";
}

}  // namespace hyperslice
