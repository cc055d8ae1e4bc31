#pragma once

// Data-parallel inner loops of the phase-space evaluators.
//
// Each kernel has a portable scalar reference in namespace `scalar` and, when
// the build enables it, vectorized variants. The unqualified entry points
// dispatch at runtime to the best backend the CPU supports; the choice can be
// pinned with set_backend() or with THERMAMP_SIMD=scalar|avx2|neon in the
// environment. Vector variants may fuse multiply-adds, so they agree with the
// reference to rounding, not bit-for-bit.

#include <span>
#include <string_view>

namespace thermamp::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend b);

/// Compiled in and supported by the running CPU.
bool backend_available(Backend b);

/// Best available backend (ignores the environment override).
Backend detect_backend();

Backend active_backend();

/// Throws std::invalid_argument if the backend is not available.
void set_backend(Backend b);

/// out[i] = sum_j coeffs[j] * x[i]^j (ascending coefficients, Horner scheme).
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);

/// out[i] = sum_k coeffs[k] * L_k(x[i]), Laguerre polynomials by the upward
/// three-term recurrence.
void laguerre_series(std::span<const double> coeffs, std::span<const double> x,
                     std::span<double> out);

namespace scalar {
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);
void laguerre_series(std::span<const double> coeffs, std::span<const double> x,
                     std::span<double> out);
}  // namespace scalar

#if defined(THERMAMP_HAVE_AVX2)
namespace avx2 {
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);
void laguerre_series(std::span<const double> coeffs, std::span<const double> x,
                     std::span<double> out);
}  // namespace avx2
#endif

#if defined(THERMAMP_HAVE_NEON)
namespace neon {
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);
void laguerre_series(std::span<const double> coeffs, std::span<const double> x,
                     std::span<double> out);
}  // namespace neon
#endif

}  // namespace thermamp::simd
