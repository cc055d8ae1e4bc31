#pragma once

// Log-space combinatorics and summation helpers shared by the closed forms.

#include <cstddef>
#include <span>

namespace thermamp {

/// log(n!) via lgamma.
double log_factorial(std::size_t n);

/// log C(n, k). Uses an explicit product of ratios when min(k, n-k) is small,
/// which is far more accurate than differencing large lgamma values.
double log_binomial(std::size_t n, std::size_t k);

/// n * log_x with the convention 0 * log(0) = 0.
inline double xlogy(double n, double log_x) { return n == 0.0 ? 0.0 : n * log_x; }

/// log(sum(exp(v))). Returns -inf for an empty span or all -inf entries.
double logsumexp(std::span<const double> values);

/// Neumaier (improved Kahan-Babuska) compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> values);

}  // namespace thermamp
