#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace korovkin::detail {

/// Neumaier-compensated accumulator. Serial additions in a fixed order give
/// bitwise-reproducible results with an error independent of the term count.
class Accumulator {
public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Sum of c(m) * x^m for m = 0.. until the geometric tail estimate
/// (running max |c|) * x^(M+1) / (1-x) drops below rel_tol * |partial| + floor.
/// Requires 0 <= x < 1.
template <class Coef>
double power_series_1d(Coef&& c, double x, double rel_tol = 1e-15,
                       std::int64_t max_terms = 100'000'000) {
  if (!(x >= 0.0 && x < 1.0))
    throw std::invalid_argument("power_series_1d: x must lie in [0, 1)");
  Accumulator acc;
  double xm = 1.0;
  double cmax = 0.0;
  for (std::int64_t m = 0; m < max_terms; ++m) {
    const double cm = c(static_cast<long>(m));
    cmax = std::max(cmax, std::abs(cm));
    acc.add(cm * xm);
    xm *= x;
    const double tail = cmax * xm / (1.0 - x);
    if (tail <= rel_tol * std::abs(acc.value()) + 1e-300 && m >= 8)
      return acc.value();
  }
  throw std::runtime_error("power_series_1d: term budget exhausted");
}

} // namespace korovkin::detail
