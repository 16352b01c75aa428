#pragma once

#include <cmath>
#include <span>

namespace hyperslice {

/// Kahan-Babuska-Neumaier accumulator. Also tracks the sum of magnitudes so
/// callers can bound the cancellation error of the result.
template <typename Real = double>
class CompensatedSum {
 public:
  void add(Real x) {
    using std::abs;
    const Real t = sum_ + x;
    if (abs(sum_) >= abs(x)) {
      c_ += (sum_ - t) + x;
    } else {
      c_ += (x - t) + sum_;
    }
    sum_ = t;
    magnitude_ += abs(x);
  }

  CompensatedSum& operator+=(Real x) {
    add(x);
    return *this;
  }

  Real value() const { return sum_ + c_; }
  Real magnitude() const { return magnitude_; }

 private:
  Real sum_{0};
  Real c_{0};
  Real magnitude_{0};
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum<> acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

/// x^n by binary powering; the same multiplication sequence on every platform.
template <typename Real>
Real ipow(Real x, int n) {
  Real result{1};
  Real base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

}  // namespace hyperslice
