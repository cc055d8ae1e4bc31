#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "thermamp/simd/kernels.hpp"

namespace thermamp::simd {

namespace {

Backend initial_backend() {
  if (const char* env = std::getenv("THERMAMP_SIMD")) {
    const std::string_view want(env);
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
      if (want == to_string(b) && backend_available(b)) return b;
    }
  }
  return detect_backend();
}

std::atomic<Backend>& active() {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

void check_sizes(std::span<const double> x, std::span<double> out) {
  if (out.size() < x.size()) throw std::invalid_argument("output span shorter than input");
}

}  // namespace

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(THERMAMP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(THERMAMP_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend detect_backend() {
  if (backend_available(Backend::Avx2)) return Backend::Avx2;
  if (backend_available(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

Backend active_backend() { return active().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("SIMD backend '" + std::string(to_string(b)) + "' is not available");
  }
  active().store(b, std::memory_order_relaxed);
}

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
  check_sizes(x, out);
  switch (active_backend()) {
#if defined(THERMAMP_HAVE_AVX2)
    case Backend::Avx2: return avx2::horner(coeffs, x, out);
#endif
#if defined(THERMAMP_HAVE_NEON)
    case Backend::Neon: return neon::horner(coeffs, x, out);
#endif
    default: return scalar::horner(coeffs, x, out);
  }
}

void laguerre_series(std::span<const double> coeffs, std::span<const double> x,
                     std::span<double> out) {
  check_sizes(x, out);
  switch (active_backend()) {
#if defined(THERMAMP_HAVE_AVX2)
    case Backend::Avx2: return avx2::laguerre_series(coeffs, x, out);
#endif
#if defined(THERMAMP_HAVE_NEON)
    case Backend::Neon: return neon::laguerre_series(coeffs, x, out);
#endif
    default: return scalar::laguerre_series(coeffs, x, out);
  }
}

}  // namespace thermamp::simd
