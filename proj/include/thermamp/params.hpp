#pragma once

// Model parameters, the noiseless-amplification map and the physicality region.
//
// Acting with g^n on a thermal state of mean photon number nbar gives another
// thermal state, provided the geometric series over Fock weights converges,
// i.e. gain^2 * nbar / (nbar + 1) < 1.

#include <string_view>

namespace thermamp {

/// Half-width of the refusal band around the convergence boundary.
inline constexpr double kCriticalGuard = 1e-9;

/// Largest supported number of added/subtracted photons.
inline constexpr int kMaxPhotonCount = 60;

struct ModelParams {
  double nbar = 0.0;  ///< input thermal mean photon number, >= 0
  double gain = 1.0;  ///< amplification gain, > 0

  /// Validating constructor; throws Error{InvalidArgument} on negative,
  /// non-finite or non-positive inputs.
  static ModelParams make(double nbar, double gain);
};

struct AmplifiedParams {
  double n0 = 1.0;        ///< 1 / (1 - nbar (gain^2 - 1))
  double nbar_amp = 0.0;  ///< n0 * gain^2 * nbar
};

enum class Variant { Added, Subtracted };

std::string_view to_string(Variant v);
/// Accepts "add"/"added"/"+" and "sub"/"subtracted"/"-".
Variant parse_variant(std::string_view text);

/// A member of one of the state families: plain thermal / amplified thermal
/// (m = 0) or the m-photon-added / -subtracted amplified thermal state.
struct StateSpec {
  ModelParams params;
  int m = 0;
  Variant variant = Variant::Added;

  /// Rejects m outside [0, kMaxPhotonCount] and subtraction from the vacuum.
  static StateSpec make(ModelParams params, int m, Variant variant);

  /// Spec whose amplified mean photon number is exactly `nbar_amp`
  /// (a unit-gain thermal input).
  static StateSpec from_amplified(double nbar_amp, int m, Variant variant);
};

enum class RegionClass { Physical, Boundary, Unphysical };

std::string_view to_string(RegionClass r);

/// gain^2 * nbar / (nbar + 1); the Fock-weight ratio after amplification.
double convergence_ratio(const ModelParams& p);

RegionClass classify_region(const ModelParams& p) noexcept;

/// Throws UnphysicalRegime beyond the boundary and NearCritical inside the
/// guard band.
AmplifiedParams amplified_params(const ModelParams& p);

/// The algebraic (n0, N) with no physicality check. Beyond the boundary this
/// yields the negative branch; exactly on it the values are infinite.
AmplifiedParams amplified_params_formal(const ModelParams& p) noexcept;

/// Amplified mean photon number for a spec (validated).
double amplified_nbar(const StateSpec& s);

/// sqrt((nbar + 1) / nbar); DomainError for nbar <= 0.
double critical_gain(double nbar);

/// 1 / (gain^2 - 1); DomainError for gain <= 1.
double critical_nbar(double gain);

struct NormalizationConstants {
  double n_m = 1.0;    ///< N_m: m!(N+1)^m (added) or m! N^m (subtracted)
  double n_m_1 = 1.0;  ///< for the gain-after-photons ordering
  double n_m_2 = 1.0;  ///< for the photons-after-gain ordering
  double log_n_m = 0.0;
  double log_n_m_1 = 0.0;
  double log_n_m_2 = 0.0;
};

/// Normalization of the unnormalized operator products. Computed in log space;
/// throws Overflow when a linear value is not representable.
NormalizationConstants normalization_constants(const StateSpec& s);

}  // namespace thermamp
