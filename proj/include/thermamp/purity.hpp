#pragma once

#include "thermamp/fock.hpp"
#include "thermamp/params.hpp"

namespace thermamp {

/// 2F1(-m, -m; 1; z) = sum_{j=0..m} C(m, j)^2 z^j, with compensated summation.
/// The (-m, -m) parameters terminate the series, so any real z is allowed.
double hyp2f1_terminating(int m, double z);

/// log 2F1(-m, -m; 1; z) for z >= 0, taking log(z) directly so that very large
/// or very small arguments do not overflow. Every term is positive.
double log_hyp2f1_terminating(int m, double log_z);

/// Tr(rho^2) from the closed hypergeometric forms.
double purity_analytic(const StateSpec& s);

/// Sum of squared diagonal weights. Throws TailTooLarge if tail_mass > 1e-10.
double purity_numeric(const DiagonalFockState& state);

/// Sum of k * rho_kk. Throws TailTooLarge if tail_mass > 1e-10.
double mean_photon_number(const DiagonalFockState& state);

struct PurityResult {
  double analytic = 0.0;
  double numeric = 0.0;
  double residual = 0.0;
};

PurityResult purity(const StateSpec& s, double tail_eps = 1e-12);

}  // namespace thermamp
