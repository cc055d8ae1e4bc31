#include "thermamp/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace thermamp {

double log_factorial(std::size_t n) {
  if (n < 2) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  const std::size_t j = std::min(k, n - k);
  if (j <= 128) {
    // log prod_{i=1..j} (n - j + i) / i
    CompensatedSum acc;
    const double base = static_cast<double>(n - j);
    for (std::size_t i = 1; i <= j; ++i) {
      acc.add(std::log1p(base / static_cast<double>(i)));
    }
    return acc.value();
  }
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double logsumexp(std::span<const double> values) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : values) hi = std::max(hi, v);
  if (!std::isfinite(hi)) return hi;
  CompensatedSum acc;
  for (double v : values) acc.add(std::exp(v - hi));
  return hi + std::log(acc.value());
}

void CompensatedSum::add(double v) noexcept {
  const double t = sum_ + v;
  if (std::fabs(sum_) >= std::fabs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

}  // namespace thermamp
