#include <arm_neon.h>

#include <cstddef>

#include "thermamp/simd/kernels.hpp"

namespace thermamp::simd::neon {

namespace {
constexpr std::size_t kLanes = 2;
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
    const float64x2_t xv = vld1q_f64(x.data() + i);
    float64x2_t acc = vdupq_n_f64(coeffs[degree]);
    for (std::size_t j = degree; j-- > 0;) {
      acc = vfmaq_f64(vdupq_n_f64(coeffs[j]), acc, xv);
    }
    vst1q_f64(out.data() + i, acc);
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
  const float64x2_t one = vdupq_n_f64(1.0);
  for (std::size_t i = 0; i < body; i += kLanes) {
    const float64x2_t xv = vld1q_f64(x.data() + i);
    float64x2_t prev = one;
    float64x2_t cur = vsubq_f64(one, xv);
    float64x2_t acc = vdupq_n_f64(coeffs[0]);
    if (terms > 1) acc = vfmaq_f64(acc, vdupq_n_f64(coeffs[1]), cur);
    for (std::size_t k = 1; k + 1 < terms; ++k) {
      const double dk = static_cast<double>(k);
      const float64x2_t a = vsubq_f64(vdupq_n_f64(2.0 * dk + 1.0), xv);
      const float64x2_t t = vfmsq_f64(vmulq_f64(a, cur), vdupq_n_f64(dk), prev);
      const float64x2_t next = vdivq_f64(t, vdupq_n_f64(dk + 1.0));
      prev = cur;
      cur = next;
      acc = vfmaq_f64(acc, vdupq_n_f64(coeffs[k + 1]), cur);
    }
    vst1q_f64(out.data() + i, acc);
  }
  if (body < n) scalar::laguerre_series(coeffs, x.subspan(body), out.subspan(body));
}

}  // namespace thermamp::simd::neon
