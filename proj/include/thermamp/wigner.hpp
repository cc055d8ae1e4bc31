#pragma once

// Wigner functions of the amplified thermal family.
//
// Phase space is parameterized by beta = (x + i y) / sqrt(2), so that
// |beta|^2 = (x^2 + y^2) / 2 throughout. All states here are diagonal in the
// Fock basis, hence every Wigner function depends on |beta| only.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "thermamp/fock.hpp"
#include "thermamp/params.hpp"

namespace thermamp {

struct PhasePoint {
  double x = 0.0;
  double y = 0.0;

  double beta_abs2() const { return 0.5 * (x * x + y * y); }
  std::complex<double> beta() const { return {x / std::sqrt(2.0), y / std::sqrt(2.0)}; }
};

/// d^m_mu d^m_nu exp(a mu + b nu + c mu nu) at mu = nu = 0, expanded as the
/// finite sum  sum_j C(m,j)^2 j! c^j (a b)^(m-j).
template <class T>
T bilinear_derivative(T a, T b, T c, int m) {
  const T ab = a * b;
  T total{0};
  double binom = 1.0;  // C(m, j)
  double fact = 1.0;   // j!
  T c_pow{1};
  for (int j = 0; j <= m; ++j) {
    T ab_pow{1};
    for (int i = 0; i < m - j; ++i) ab_pow *= ab;
    total += T(binom * binom * fact) * c_pow * ab_pow;
    binom = binom * (m - j) / (j + 1);
    fact *= (j + 1);
    c_pow *= c;
  }
  return total;
}

/// Gaussian Wigner function of a thermal state with mean photon number nbar_amp.
double wigner_thermal(double nbar_amp, PhasePoint p);

/// Closed-form Wigner evaluator for one state. The non-Gaussian factor is a
/// degree-m polynomial whose coefficients are fixed per state, so build one
/// evaluator and reuse it across points.
class WignerEvaluator {
 public:
  explicit WignerEvaluator(const StateSpec& spec);

  double value(PhasePoint p) const;
  /// W / W_thermal, from the polynomial directly.
  double nongaussian(PhasePoint p) const;

  /// Batched value() through the dispatched SIMD Horner kernel.
  void evaluate(std::span<const PhasePoint> points, std::span<double> out) const;

  double nbar_amp() const { return nbar_amp_; }
  const StateSpec& spec() const { return spec_; }

 private:
  StateSpec spec_;
  double nbar_amp_ = 0.0;
  double log_prefactor_ = 0.0;   // log(2 / (pi (2N+1))) - m log(2N+1)
  double log_poly_scale_ = 0.0;  // -m log(2N+1)
  double gauss_rate_ = 0.0;      // 2 / (2N+1)
  double poly_arg_scale_ = 0.0;  // v = poly_arg_scale_ * |beta|^2
  std::vector<double> coeffs_;   // ascending powers of v
};

double wigner_value(const StateSpec& s, PhasePoint p);

/// Reference path: complex bilinear_derivative with the generating-function
/// coefficients, normalized by N_m. Throws std::logic_error if the imaginary
/// residue exceeds 1e-14 of the term scale.
double wigner_value_bilinear(const StateSpec& s, PhasePoint p);

/// Non-Gaussian factor T = W / W_thermal. Requires m >= 1.
double nongaussian_term(const StateSpec& s, PhasePoint p);

/// Independent witness: sum_k rho_kk (2/pi) (-1)^k e^{-2|beta|^2} L_k(4|beta|^2).
/// Throws TailTooLarge if the state tail exceeds 1e-10.
double wigner_oracle(const DiagonalFockState& state, PhasePoint p);
void wigner_oracle(const DiagonalFockState& state, std::span<const PhasePoint> points,
                   std::span<double> out);

/// Radius in |beta| inside which the single-photon-added state is negative.
double negativity_radius_m1(double nbar_amp);

struct SectionMinimum {
  double x_min = 0.0;
  double w_min = 0.0;
};

/// Search domain [0, x_hi] for the y = 0 section.
double section_extent(double nbar_amp);

/// Minimum of W(x, 0) over x in [0, section_extent]: dense sampling at 1e-2
/// followed by golden-section refinement to 1e-10. w_min >= 0 means no
/// negativity on the section.
SectionMinimum min_section(const StateSpec& s);

/// Sign changes of W(x, 0) on [0, section_extent], each bisected to machine
/// precision.
std::vector<double> section_roots(const StateSpec& s);

struct GridAxis {
  double lo = -4.0;
  double hi = 4.0;
  std::size_t count = 161;

  double at(std::size_t i) const;
  double step() const;
};

/// Values stored row-major: values[iy * x.count + ix].
struct WignerGrid {
  GridAxis x;
  GridAxis y;
  std::vector<double> values;

  double at(std::size_t ix, std::size_t iy) const { return values[iy * x.count + ix]; }
  /// Trapezoid estimate of the integral of W over d^2 beta = dx dy / 2.
  double integral() const;
  double min_value() const;
};

/// Samples wigner_value on a rectangular grid. Points are independent; rows are
/// spread over `threads` workers (0 = hardware concurrency). The result does
/// not depend on the thread count.
WignerGrid wigner_grid(const StateSpec& s, GridAxis x, GridAxis y, unsigned threads = 0);

}  // namespace thermamp
