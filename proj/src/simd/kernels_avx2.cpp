#include <immintrin.h>

#include <cstddef>

#include "thermamp/simd/kernels.hpp"

namespace thermamp::simd::avx2 {

namespace {
constexpr std::size_t kLanes = 4;
}

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  const std::size_t body = n - n % kLanes;
  if (coeffs.empty()) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    return;
  }
  const std::size_t degree = coeffs.size() - 1;
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d xv = _mm256_loadu_pd(x.data() + i);
    __m256d acc = _mm256_set1_pd(coeffs[degree]);
    for (std::size_t j = degree; j-- > 0;) {
      acc = _mm256_fmadd_pd(acc, xv, _mm256_set1_pd(coeffs[j]));
    }
    _mm256_storeu_pd(out.data() + i, acc);
  }
  if (body < n) scalar::horner(coeffs, x.subspan(body), out.subspan(body));
}

void laguerre_series(std::span<const double> coeffs, std::span<const double> x,
                     std::span<double> out) {
  const std::size_t n = x.size();
  const std::size_t body = n - n % kLanes;
  const std::size_t terms = coeffs.size();
  if (terms == 0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    return;
  }
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d xv = _mm256_loadu_pd(x.data() + i);
    __m256d prev = one;
    __m256d cur = _mm256_sub_pd(one, xv);
    __m256d acc = _mm256_set1_pd(coeffs[0]);
    if (terms > 1) acc = _mm256_fmadd_pd(_mm256_set1_pd(coeffs[1]), cur, acc);
    for (std::size_t k = 1; k + 1 < terms; ++k) {
      const double dk = static_cast<double>(k);
      const __m256d a = _mm256_sub_pd(_mm256_set1_pd(2.0 * dk + 1.0), xv);
      const __m256d t = _mm256_fmsub_pd(a, cur, _mm256_mul_pd(_mm256_set1_pd(dk), prev));
      const __m256d next = _mm256_div_pd(t, _mm256_set1_pd(dk + 1.0));
      prev = cur;
      cur = next;
      acc = _mm256_fmadd_pd(_mm256_set1_pd(coeffs[k + 1]), cur, acc);
    }
    _mm256_storeu_pd(out.data() + i, acc);
  }
  if (body < n) scalar::laguerre_series(coeffs, x.subspan(body), out.subspan(body));
}

}  // namespace thermamp::simd::avx2
