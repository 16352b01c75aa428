#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyperslice {

/// Closed interval of doubles with outward rounding: every arithmetic result
/// is widened by one ulp on each side, which encloses the exact result under
/// round-to-nearest.
class Interval {
 public:
  Interval() = default;
  explicit Interval(double x) : lo_(x), hi_(x) {}
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {}

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }

  friend Interval operator+(Interval x, Interval y) {
    return outward(x.lo_ + y.lo_, x.hi_ + y.hi_);
  }
  friend Interval operator-(Interval x, Interval y) {
    return outward(x.lo_ - y.hi_, x.hi_ - y.lo_);
  }
  friend Interval operator*(Interval x, Interval y) {
    const double p[4] = {x.lo_ * y.lo_, x.lo_ * y.hi_, x.hi_ * y.lo_,
                         x.hi_ * y.hi_};
    return outward(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
  }

 private:
  static Interval outward(double lo, double hi) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {std::nextafter(lo, -inf), std::nextafter(hi, inf)};
  }

  double lo_ = 0.0;
  double hi_ = 0.0;
};

}  // namespace hyperslice
