#include <cstddef>

#include "thermamp/simd/kernels.hpp"

namespace thermamp::simd::scalar {

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  if (coeffs.empty()) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double acc = coeffs.back();
    for (std::size_t j = coeffs.size() - 1; j-- > 0;) acc = acc * x[i] + coeffs[j];
    out[i] = acc;
  }
}

void laguerre_series(std::span<const double> coeffs, std::span<const double> x,
                     std::span<double> out) {
  const std::size_t n = x.size();
  const std::size_t terms = coeffs.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (terms == 0) {
      out[i] = 0.0;
      continue;
    }
    double prev = 1.0;         // L_0
    double cur = 1.0 - x[i];   // L_1
    double acc = coeffs[0] * prev;
    if (terms > 1) acc += coeffs[1] * cur;
    for (std::size_t k = 1; k + 1 < terms; ++k) {
      const double dk = static_cast<double>(k);
      const double next = ((2.0 * dk + 1.0 - x[i]) * cur - dk * prev) / (dk + 1.0);
      prev = cur;
      cur = next;
      acc += coeffs[k + 1] * cur;
    }
    out[i] = acc;
  }
}

}  // namespace thermamp::simd::scalar
