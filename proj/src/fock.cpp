#include "thermamp/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "thermamp/error.hpp"
#include "thermamp/special.hpp"

namespace thermamp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxMatrixIndex = 2000;

// Negative-binomial shape shared by every member of the family, with the
// logs of r = N/(N+1) and 1 - r precomputed.
struct NegBinomialShape {
  int m = 0;
  Variant variant = Variant::Added;
  double log_r = kNegInf;
  double log_one_minus_r = 0.0;

  explicit NegBinomialShape(const StateSpec& s) : m(s.m), variant(s.variant) {
    const double nbar_amp = amplified_nbar(s);
    if (variant == Variant::Subtracted && m > 0 && nbar_amp == 0.0) {
      throw Error(ErrorKind::SubtractionFromVacuum, "photon subtraction annihilates the vacuum");
    }
    log_one_minus_r = -std::log1p(nbar_amp);
    log_r = nbar_amp == 0.0 ? kNegInf : -std::log1p(1.0 / nbar_amp);
  }

  // log rho_kk of the subtracted form C(m+k, k) r^k (1-r)^(m+1); the added
  // form is this shifted by m.
  double log_subtracted(std::size_t k) const {
    const auto mm = static_cast<std::size_t>(m);
    return log_binomial(k + mm, mm) + xlogy(static_cast<double>(k), log_r) +
           static_cast<double>(m + 1) * log_one_minus_r;
  }

  double log_pnd(std::size_t k) const {
    const auto mm = static_cast<std::size_t>(m);
    if (variant == Variant::Added) {
      if (k < mm) return kNegInf;
      return log_subtracted(k - mm);
    }
    return log_subtracted(k);
  }

  // P(X > cutoff) for the subtracted-form variable X: fewer than m+1
  // "successes" (prob 1-r) in the first cutoff+m+1 Bernoulli trials.
  double log_tail_subtracted(std::size_t cutoff) const {
    const std::size_t trials = cutoff + static_cast<std::size_t>(m) + 1;
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(m) + 1);
    for (std::size_t j = 0; j <= static_cast<std::size_t>(m); ++j) {
      terms.push_back(log_binomial(trials, j) + static_cast<double>(j) * log_one_minus_r +
                      xlogy(static_cast<double>(trials - j), log_r));
    }
    return logsumexp(terms);
  }

  double tail_beyond(std::size_t cutoff) const {
    std::size_t shifted = cutoff;
    if (variant == Variant::Added) {
      const auto mm = static_cast<std::size_t>(m);
      if (cutoff < mm) return 1.0;
      shifted = cutoff - mm;
    }
    return std::exp(log_tail_subtracted(shifted));
  }
};

void check_photon_count(int m) {
  if (m < 0 || m > kMaxPhotonCount) {
    throw Error(ErrorKind::DomainError,
                "photon count m must lie in [0, " + std::to_string(kMaxPhotonCount) + "]");
  }
}

// Input thermal weights log[nbar^n / (nbar+1)^(n+1)] for n = 0..cutoff.
std::vector<double> log_thermal_input(double nbar, std::size_t cutoff) {
  std::vector<double> lw(cutoff + 1, kNegInf);
  if (nbar == 0.0) {
    lw[0] = 0.0;
    return lw;
  }
  const double log_nbar = std::log(nbar);
  const double log_nbar1 = std::log(nbar + 1.0);
  for (std::size_t n = 0; n <= cutoff; ++n) {
    const double dn = static_cast<double>(n);
    lw[n] = dn * log_nbar - (dn + 1.0) * log_nbar1;
  }
  return lw;
}

// log of (n+1)(n+2)...(n+m): squared matrix element of a^dag^m on |n>.
double log_rising(std::size_t n, int m) {
  double acc = 0.0;
  for (int i = 1; i <= m; ++i) acc += std::log(static_cast<double>(n) + i);
  return acc;
}

// log of n(n-1)...(n-m+1): squared matrix element of a^m on |n>, n >= m.
double log_falling(std::size_t n, int m) {
  double acc = 0.0;
  for (int i = 0; i < m; ++i) acc += std::log(static_cast<double>(n) - i);
  return acc;
}

std::vector<double> apply_gain(std::vector<double> lw, double gain) {
  const double two_log_g = 2.0 * std::log(gain);
  for (std::size_t n = 0; n < lw.size(); ++n) {
    if (lw[n] != kNegInf) lw[n] += static_cast<double>(n) * two_log_g;
  }
  return lw;
}

std::vector<double> apply_photons(const std::vector<double>& lw, int m, Variant variant) {
  const auto mm = static_cast<std::size_t>(m);
  if (variant == Variant::Added) {
    std::vector<double> out(lw.size() + mm, kNegInf);
    for (std::size_t n = 0; n < lw.size(); ++n) {
      if (lw[n] != kNegInf) out[n + mm] = lw[n] + log_rising(n, m);
    }
    return out;
  }
  if (lw.size() <= mm) return {};
  std::vector<double> out(lw.size() - mm, kNegInf);
  for (std::size_t n = mm; n < lw.size(); ++n) {
    if (lw[n] != kNegInf) out[n - mm] = lw[n] + log_falling(n, m);
  }
  return out;
}

std::vector<double> oracle_log_weights(const ModelParams& params, int m, Variant variant,
                                       std::size_t cutoff, Ordering ordering) {
  const ModelParams p = ModelParams::make(params.nbar, params.gain);
  check_photon_count(m);
  std::vector<double> lw = log_thermal_input(p.nbar, cutoff);
  if (ordering == Ordering::GainThenPhotons) {
    lw = apply_photons(apply_gain(std::move(lw), p.gain), m, variant);
  } else {
    lw = apply_gain(apply_photons(lw, m, variant), p.gain);
  }
  return lw;
}

}  // namespace

double DiagonalFockState::retained_mass() const { return compensated_sum(weights); }

double log_pnd_value(const StateSpec& s, std::size_t k) {
  return NegBinomialShape(s).log_pnd(k);
}

double pnd_value(const StateSpec& s, std::size_t k) {
  const double lp = log_pnd_value(s, k);
  return lp == kNegInf ? 0.0 : std::exp(lp);
}

double tail_mass_beyond(const StateSpec& s, std::size_t cutoff) {
  return NegBinomialShape(s).tail_beyond(cutoff);
}

DiagonalFockState build_state(const StateSpec& s, double tail_eps, std::size_t max_cutoff) {
  if (!(tail_eps > 0.0 && tail_eps < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "tail_eps must lie in (0, 1)");
  }
  const NegBinomialShape shape(s);
  const std::size_t shift = s.variant == Variant::Added ? static_cast<std::size_t>(s.m) : 0;
  if (max_cutoff < shift) {
    throw Error(ErrorKind::CutoffExceeded, "max_cutoff is below the photon count");
  }

  // The tail is monotone in the cutoff, so bisect for the smallest admissible one.
  std::size_t hi = max_cutoff - shift;
  if (shape.tail_beyond(hi + shift) > tail_eps) {
    throw Error(ErrorKind::CutoffExceeded,
                "Fock cutoff " + std::to_string(max_cutoff) +
                    " is insufficient for the requested tail bound (state too close to criticality)");
  }
  std::size_t lo = 0;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (shape.tail_beyond(mid + shift) <= tail_eps) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }

  DiagonalFockState state;
  state.cutoff = lo + shift;
  state.tail_mass = shape.tail_beyond(state.cutoff);
  state.weights.resize(state.cutoff + 1);
  for (std::size_t k = 0; k <= state.cutoff; ++k) {
    const double lp = shape.log_pnd(k);
    state.weights[k] = lp == kNegInf ? 0.0 : std::exp(lp);
  }
  return state;
}

DiagonalFockState oracle_pipeline(const ModelParams& params, int m, Variant variant,
                                  std::size_t cutoff, Ordering ordering) {
  const std::vector<double> lw = oracle_log_weights(params, m, variant, cutoff, ordering);
  const double log_trace = logsumexp(lw);
  if (lw.empty() || log_trace == kNegInf) {
    throw Error(ErrorKind::SubtractionFromVacuum,
                "no weight survives photon subtraction on the retained Fock range");
  }
  DiagonalFockState state;
  state.cutoff = lw.size() - 1;
  state.weights.resize(lw.size());
  for (std::size_t k = 0; k < lw.size(); ++k) {
    state.weights[k] = lw[k] == kNegInf ? 0.0 : std::exp(lw[k] - log_trace);
  }
  state.tail_mass = 0.0;
  return state;
}

double oracle_log_trace(const ModelParams& params, int m, Variant variant, std::size_t cutoff,
                        Ordering ordering) {
  return logsumexp(oracle_log_weights(params, m, variant, cutoff, ordering));
}

double matrix_element(const StateSpec& s, std::size_t k, std::size_t l) {
  if (k > kMaxMatrixIndex || l > kMaxMatrixIndex) {
    throw Error(ErrorKind::DomainError, "matrix_element supports indices up to 2000");
  }
  const double nbar_amp = amplified_nbar(s);
  if (s.variant == Variant::Subtracted && s.m > 0 && nbar_amp == 0.0) {
    throw Error(ErrorKind::SubtractionFromVacuum, "photon subtraction annihilates the vacuum");
  }
  // Expanding the generating function, the f^k h^l coefficient survives only
  // when both exponents are matched by the same power of fh, i.e. k == l.
  if (k != l) return 0.0;

  const auto lf = [](std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); };
  const std::size_t m = static_cast<std::size_t>(s.m);
  const double dm = static_cast<double>(s.m);
  const double log_nbar1 = std::log1p(nbar_amp);
  const double log_t = nbar_amp == 0.0 ? kNegInf : std::log(nbar_amp) - log_nbar1;

  double log_rho = kNegInf;
  if (s.variant == Variant::Added) {
    if (k < m) return 0.0;
    // d^m_mu d^m_nu d^k_f d^k_h exp(f mu + h nu + t f h): the single term
    // (fh)^(k-m) contributes k!^2 t^(k-m) / (k-m)!.
    const double log_norm = lf(m) + dm * log_nbar1;
    log_rho = 2.0 * lf(k) - lf(k - m) + xlogy(static_cast<double>(k - m), log_t) - log_nbar1 -
              lf(k) - log_norm;
  } else {
    // exp(t(mu nu + nu h + mu f + f h)): choose a factors of mu nu, m-a of
    // each of nu h and mu f, and k-m+a of f h.
    const std::size_t a_lo = m > k ? m - k : 0;
    std::vector<double> terms;
    for (std::size_t a = a_lo; a <= m; ++a) {
      terms.push_back(-lf(a) - 2.0 * lf(m - a) - lf(k + a - m));
    }
    const double log_norm = lf(m) + xlogy(dm, std::log(nbar_amp));
    log_rho = 2.0 * lf(m) + 2.0 * lf(k) + xlogy(dm + static_cast<double>(k), log_t) +
              logsumexp(terms) - log_nbar1 - lf(k) - log_norm;
  }
  return log_rho == kNegInf ? 0.0 : std::exp(log_rho);
}

}  // namespace thermamp
