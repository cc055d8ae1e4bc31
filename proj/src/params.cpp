#include "thermamp/params.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "thermamp/error.hpp"
#include "thermamp/special.hpp"

namespace thermamp {

namespace {

std::string describe(const ModelParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << "nbar=" << p.nbar << ", gain=" << p.gain;
  return os.str();
}

double checked_exp(double log_value, const char* what) {
  if (log_value > std::log(std::numeric_limits<double>::max())) {
    throw Error(ErrorKind::Overflow, std::string(what) + " exceeds the double range");
  }
  return std::exp(log_value);
}

}  // namespace

ModelParams ModelParams::make(double nbar, double gain) {
  if (!std::isfinite(nbar) || nbar < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "nbar must be finite and >= 0");
  }
  if (!std::isfinite(gain) || gain <= 0.0) {
    throw Error(ErrorKind::InvalidArgument, "gain must be finite and > 0");
  }
  return ModelParams{nbar, gain};
}

std::string_view to_string(Variant v) {
  return v == Variant::Added ? "add" : "sub";
}

Variant parse_variant(std::string_view text) {
  if (text == "add" || text == "added" || text == "+") return Variant::Added;
  if (text == "sub" || text == "subtracted" || text == "-") return Variant::Subtracted;
  throw Error(ErrorKind::InvalidArgument,
              "unknown variant '" + std::string(text) + "' (expected add|sub)");
}

StateSpec StateSpec::make(ModelParams params, int m, Variant variant) {
  params = ModelParams::make(params.nbar, params.gain);
  if (m < 0 || m > kMaxPhotonCount) {
    throw Error(ErrorKind::DomainError,
                "photon count m must lie in [0, " + std::to_string(kMaxPhotonCount) + "]");
  }
  // nbar == 0 is the only way to reach an amplified vacuum.
  if (variant == Variant::Subtracted && m > 0 && params.nbar == 0.0) {
    throw Error(ErrorKind::SubtractionFromVacuum, "photon subtraction annihilates the vacuum");
  }
  return StateSpec{params, m, variant};
}

StateSpec StateSpec::from_amplified(double nbar_amp, int m, Variant variant) {
  return make(ModelParams::make(nbar_amp, 1.0), m, variant);
}

std::string_view to_string(RegionClass r) {
  switch (r) {
    case RegionClass::Physical: return "physical";
    case RegionClass::Boundary: return "boundary";
    case RegionClass::Unphysical: return "unphysical";
  }
  return "unknown";
}

double convergence_ratio(const ModelParams& p) {
  return p.gain * p.gain * p.nbar / (p.nbar + 1.0);
}

RegionClass classify_region(const ModelParams& p) noexcept {
  const double ratio = convergence_ratio(p);
  if (ratio < 1.0 - kCriticalGuard) return RegionClass::Physical;
  if (ratio > 1.0 + kCriticalGuard) return RegionClass::Unphysical;
  return RegionClass::Boundary;
}

AmplifiedParams amplified_params_formal(const ModelParams& p) noexcept {
  const double excess = (p.gain - 1.0) * (p.gain + 1.0);  // gain^2 - 1
  const double n0 = 1.0 / (1.0 - p.nbar * excess);
  return AmplifiedParams{n0, n0 * p.gain * p.gain * p.nbar};
}

AmplifiedParams amplified_params(const ModelParams& p) {
  switch (classify_region(p)) {
    case RegionClass::Physical:
      return amplified_params_formal(p);
    case RegionClass::Boundary:
      throw Error(ErrorKind::NearCritical,
                  "parameters lie within the guard band of the critical boundary (" +
                      describe(p) + ")");
    case RegionClass::Unphysical:
      break;
  }
  std::ostringstream os;
  os << "amplified state does not exist for " << describe(p) << ": the Fock series diverges";
  if (p.nbar > 0.0) {
    os << std::fixed << std::setprecision(4) << " (critical gain g_c = " << critical_gain(p.nbar)
       << " for this nbar)";
  }
  throw Error(ErrorKind::UnphysicalRegime, os.str());
}

double amplified_nbar(const StateSpec& s) { return amplified_params(s.params).nbar_amp; }

double critical_gain(double nbar) {
  if (!(nbar > 0.0) || !std::isfinite(nbar)) {
    throw Error(ErrorKind::DomainError, "critical gain requires finite nbar > 0");
  }
  return std::sqrt((nbar + 1.0) / nbar);
}

double critical_nbar(double gain) {
  if (!(gain > 1.0) || !std::isfinite(gain)) {
    throw Error(ErrorKind::DomainError, "critical nbar requires finite gain > 1");
  }
  return 1.0 / ((gain - 1.0) * (gain + 1.0));
}

NormalizationConstants normalization_constants(const StateSpec& s) {
  const AmplifiedParams amp = amplified_params(s.params);
  const double m = static_cast<double>(s.m);
  const double log_mfact = log_factorial(static_cast<std::size_t>(s.m));

  NormalizationConstants out;
  double log_gain_factor = 0.0;
  if (s.variant == Variant::Added) {
    out.log_n_m = log_mfact + m * std::log1p(amp.nbar_amp);
    log_gain_factor = 2.0 * m * std::log(s.params.gain);
  } else {
    if (s.m > 0 && amp.nbar_amp == 0.0) {
      throw Error(ErrorKind::SubtractionFromVacuum, "photon subtraction annihilates the vacuum");
    }
    out.log_n_m = log_mfact + xlogy(m, std::log(amp.nbar_amp));
    log_gain_factor = -2.0 * m * std::log(s.params.gain);
  }
  const double log_n0 = std::log(amp.n0);
  out.log_n_m_2 = log_n0 + out.log_n_m;
  out.log_n_m_1 = log_gain_factor + out.log_n_m_2;

  out.n_m = checked_exp(out.log_n_m, "N_m");
  out.n_m_1 = checked_exp(out.log_n_m_1, "N_m^(1)");
  out.n_m_2 = checked_exp(out.log_n_m_2, "N_m^(2)");
  return out;
}

}  // namespace thermamp
