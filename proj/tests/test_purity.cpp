#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "thermamp/error.hpp"
#include "thermamp/fock.hpp"
#include "thermamp/purity.hpp"

using namespace thermamp;

TEST(Hyp2f1, SmallCasesByHand) {
  EXPECT_EQ(hyp2f1_terminating(0, 3.0), 1.0);
  EXPECT_EQ(hyp2f1_terminating(1, 3.0), 4.0);               // 1 + z
  EXPECT_EQ(hyp2f1_terminating(2, 3.0), 1.0 + 12.0 + 9.0);  // 1 + 4z + z^2
  EXPECT_EQ(hyp2f1_terminating(3, 1.0), 20.0);              // C(6,3)
}

TEST(Hyp2f1, CentralBinomialAtOne) {
  double c = 1.0;  // C(2m, m)
  for (int m = 1; m <= 25; ++m) {
    c = c * (2.0 * m) * (2.0 * m - 1.0) / (static_cast<double>(m) * m);
    EXPECT_NEAR(hyp2f1_terminating(m, 1.0), c, 1e-15 * c);
  }
}

TEST(Hyp2f1, LogFormAgrees) {
  for (int m : {1, 4, 10, 30}) {
    for (double z : {0.01, 0.7, 3.0, 250.0}) {
      EXPECT_NEAR(log_hyp2f1_terminating(m, std::log(z)), std::log(hyp2f1_terminating(m, z)),
                  1e-13);
    }
  }
}

TEST(Purity, ThermalClosedForm) {
  for (double n : {0.0, 0.1, 1.0, 6.352941, 20.0}) {
    const double p = purity_analytic(StateSpec::from_amplified(n, 0, Variant::Added));
    EXPECT_NEAR(p, 1.0 / (2.0 * n + 1.0), 1e-15);
  }
}

TEST(Purity, AddedEqualsSubtracted) {
  for (int m = 0; m <= 10; ++m) {
    for (double n : {0.1, 1.0, 6.352941, 20.0}) {
      const double a = purity_analytic(StateSpec::from_amplified(n, m, Variant::Added));
      const double s = purity_analytic(StateSpec::from_amplified(n, m, Variant::Subtracted));
      EXPECT_NEAR(a, s, 1e-12 * a) << m << " " << n;
    }
  }
}

TEST(Purity, MatchesBruteForceSumOfSquares) {
  for (int m : {0, 1, 3, 5}) {
    for (double n : {0.1, 1.0, 4.0}) {
      const auto w = oracle::added_weights(n, m, 2000);
      const double expect = static_cast<double>(oracle::sum_squares(w));
      const StateSpec s = StateSpec::from_amplified(n, m, Variant::Added);
      EXPECT_NEAR(purity_analytic(s), expect, 1e-13);
      EXPECT_NEAR(purity_numeric(build_state(s)), expect, 1e-12);
    }
  }
}

TEST(Purity, BoundsAndFockLimit) {
  for (int m = 0; m <= 8; ++m) {
    for (double n : {0.05, 0.5, 3.0, 30.0}) {
      const double p = purity_analytic(StateSpec::from_amplified(n, m, Variant::Added));
      EXPECT_GT(p, 0.0);
      EXPECT_LT(p, 1.0);
    }
  }
  // N = 0 with added photons is the pure Fock state |m>.
  EXPECT_EQ(purity_analytic(StateSpec::from_amplified(0.0, 4, Variant::Added)), 1.0);
  EXPECT_EQ(purity_analytic(StateSpec::from_amplified(0.0, 0, Variant::Subtracted)), 1.0);
}

TEST(Purity, DecreasesWithMeanPhotonNumber) {
  for (int m : {0, 1, 3, 5}) {
    double prev = 2.0;
    for (double n = 0.1; n < 10.0; n += 0.25) {
      const double p = purity_analytic(StateSpec::from_amplified(n, m, Variant::Added));
      EXPECT_LT(p, prev);
      prev = p;
    }
  }
}

TEST(Purity, NumericAndResidual) {
  const StateSpec s = StateSpec::make(ModelParams{1.5, 1.1}, 3, Variant::Subtracted);
  const PurityResult r = purity(s);
  EXPECT_LE(r.residual, 1e-9);
  EXPECT_EQ(r.residual, std::fabs(r.analytic - r.numeric));
  EXPECT_THROW(purity_numeric(build_state(s, 1e-6)), Error);
}

TEST(MeanPhotonNumber, ShiftByM) {
  for (int m : {1, 2, 5, 8}) {
    for (double n : {0.1, 1.5, 6.0}) {
      const double add = mean_photon_number(build_state(StateSpec::from_amplified(n, m, Variant::Added)));
      const double sub =
          mean_photon_number(build_state(StateSpec::from_amplified(n, m, Variant::Subtracted)));
      EXPECT_NEAR(add - sub, m, 1e-10 * m);
      // Negative-binomial mean: (m + 1) N for subtracted.
      EXPECT_NEAR(sub, (m + 1) * n, 1e-10 * (m + 1) * n);
    }
  }
}
