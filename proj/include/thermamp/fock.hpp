#pragma once

// Photon-number distributions of the amplified thermal family.
//
// All states considered here are diagonal in the Fock basis. Their weights are
// negative-binomial shaped in k with ratio r = N/(N+1):
//   thermal      rho_kk = r^k (1-r)
//   m-subtracted rho_kk = C(m+k, k)   r^k     (1-r)^(m+1)
//   m-added      rho_kk = C(k, m)     r^(k-m) (1-r)^(m+1)   (zero for k < m)

#include <cstddef>
#include <vector>

#include "thermamp/params.hpp"

namespace thermamp {

inline constexpr std::size_t kDefaultMaxCutoff = 200'000;

/// Truncated diagonal density matrix. weights[k] = rho_kk for k = 0..cutoff;
/// tail_mass is the probability beyond the cutoff.
struct DiagonalFockState {
  std::vector<double> weights;
  std::size_t cutoff = 0;
  double tail_mass = 0.0;

  /// Compensated sum of the retained weights.
  double retained_mass() const;
};

/// Closed-form rho_kk, evaluated in log space. Exact zeros are returned as 0.
double pnd_value(const StateSpec& s, std::size_t k);

/// Natural log of pnd_value (-inf for exact zeros).
double log_pnd_value(const StateSpec& s, std::size_t k);

/// Exact probability mass strictly beyond index `cutoff`.
double tail_mass_beyond(const StateSpec& s, std::size_t cutoff);

/// Weights up to the smallest cutoff whose exact analytic tail is <= tail_eps.
/// Throws CutoffExceeded when that cutoff would exceed `max_cutoff`.
DiagonalFockState build_state(const StateSpec& s, double tail_eps = 1e-12,
                              std::size_t max_cutoff = kDefaultMaxCutoff);

/// Order in which the amplifier and the photon operators act on rho_th(nbar).
enum class Ordering {
  GainThenPhotons,  ///< a^dag^m g^n rho g^n a^m  (or the subtracted analogue)
  PhotonsThenGain,  ///< g^n a^dag^m rho a^m g^n
};

/// Brute-force construction from the input thermal state: amplify Fock weight
/// n by gain^(2n), move weight by the photon operator, then renormalize.
/// Makes no use of the closed forms above. `cutoff` is the largest input Fock
/// index kept; it must be large enough that the discarded tail is negligible.
DiagonalFockState oracle_pipeline(const ModelParams& params, int m, Variant variant,
                                  std::size_t cutoff,
                                  Ordering ordering = Ordering::GainThenPhotons);

/// log of the trace of the unnormalized operator product built by
/// oracle_pipeline, i.e. the normalization constant it divides out.
double oracle_log_trace(const ModelParams& params, int m, Variant variant,
                        std::size_t cutoff, Ordering ordering);

/// <k| rho |l> from the generating-function expansion of the density operator.
/// Zero unless k == l. Requires k, l <= 2000.
double matrix_element(const StateSpec& s, std::size_t k, std::size_t l);

}  // namespace thermamp
