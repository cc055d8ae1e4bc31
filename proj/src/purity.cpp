#include "thermamp/purity.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "thermamp/error.hpp"
#include "thermamp/special.hpp"

namespace thermamp {

namespace {

constexpr double kMaxTailForMoments = 1e-10;

void check_m(int m) {
  if (m < 0 || m > kMaxPhotonCount) {
    throw Error(ErrorKind::DomainError,
                "m must lie in [0, " + std::to_string(kMaxPhotonCount) + "]");
  }
}

void check_tail(const DiagonalFockState& state) {
  if (state.tail_mass > kMaxTailForMoments) {
    throw Error(ErrorKind::TailTooLarge, "state tail mass exceeds 1e-10; rebuild with a smaller tail_eps");
  }
}

}  // namespace

double hyp2f1_terminating(int m, double z) {
  check_m(m);
  CompensatedSum acc;
  double zj = 1.0;
  double binom = 1.0;  // C(m, j); the recurrence is exact in double for m <= 50
  for (int j = 0; j <= m; ++j) {
    acc.add(binom * binom * zj);
    binom = binom * (m - j) / (j + 1);
    zj *= z;
  }
  return acc.value();
}

double log_hyp2f1_terminating(int m, double log_z) {
  check_m(m);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) {
    terms.push_back(2.0 * log_binomial(static_cast<std::size_t>(m), static_cast<std::size_t>(j)) +
                    xlogy(static_cast<double>(j), log_z));
  }
  return logsumexp(terms);
}

double purity_analytic(const StateSpec& s) {
  const double nbar_amp = amplified_nbar(s);
  const double dm = static_cast<double>(s.m);
  const double log_2n1 = std::log1p(2.0 * nbar_amp);
  if (s.m == 0) return 1.0 / (2.0 * nbar_amp + 1.0);
  if (nbar_amp == 0.0) {
    if (s.variant == Variant::Subtracted) {
      throw Error(ErrorKind::SubtractionFromVacuum, "photon subtraction annihilates the vacuum");
    }
    return 1.0;  // a^dag^m on the vacuum is the pure Fock state |m>
  }
  const double log_n = std::log(nbar_amp);
  const double log_n1 = std::log1p(nbar_amp);
  double log_p = 0.0;
  if (s.variant == Variant::Added) {
    // N^{2m} / (2N+1)^{2m+1} 2F1(-m,-m;1;(N+1)^2/N^2)
    log_p = 2.0 * dm * log_n - (2.0 * dm + 1.0) * log_2n1 +
            log_hyp2f1_terminating(s.m, 2.0 * (log_n1 - log_n));
  } else {
    // (N+1)^{2m} / (2N+1)^{2m+1} 2F1(-m,-m;1;N^2/(N+1)^2)
    log_p = 2.0 * dm * log_n1 - (2.0 * dm + 1.0) * log_2n1 +
            log_hyp2f1_terminating(s.m, 2.0 * (log_n - log_n1));
  }
  return std::exp(log_p);
}

double purity_numeric(const DiagonalFockState& state) {
  check_tail(state);
  CompensatedSum acc;
  for (double w : state.weights) acc.add(w * w);
  return acc.value();
}

double mean_photon_number(const DiagonalFockState& state) {
  check_tail(state);
  CompensatedSum acc;
  for (std::size_t k = 0; k < state.weights.size(); ++k) {
    acc.add(static_cast<double>(k) * state.weights[k]);
  }
  return acc.value();
}

PurityResult purity(const StateSpec& s, double tail_eps) {
  PurityResult r;
  r.analytic = purity_analytic(s);
  r.numeric = purity_numeric(build_state(s, tail_eps));
  r.residual = std::fabs(r.analytic - r.numeric);
  return r;
}

}  // namespace thermamp
