#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <string>

#include "oracles.hpp"
#include "thermamp/error.hpp"
#include "thermamp/fock.hpp"
#include "thermamp/params.hpp"

using namespace thermamp;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no thermamp::Error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(ModelParams, RejectsBadInput) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(kind_of([] { ModelParams::make(-0.1, 1.0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { ModelParams::make(1.0, 0.0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { ModelParams::make(1.0, -2.0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { ModelParams::make(nan, 1.0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { ModelParams::make(1.0, nan); }), ErrorKind::InvalidArgument);
  EXPECT_NO_THROW(ModelParams::make(0.0, 0.5));
}

TEST(StateSpec, PhotonCountAndVacuum) {
  const ModelParams p{1.5, 1.0};
  EXPECT_EQ(kind_of([&] { StateSpec::make(p, -1, Variant::Added); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([&] { StateSpec::make(p, 61, Variant::Added); }), ErrorKind::DomainError);
  EXPECT_NO_THROW(StateSpec::make(p, 60, Variant::Subtracted));
  EXPECT_EQ(kind_of([] { StateSpec::make(ModelParams{0.0, 1.2}, 2, Variant::Subtracted); }),
            ErrorKind::SubtractionFromVacuum);
  EXPECT_NO_THROW(StateSpec::make(ModelParams{0.0, 1.2}, 0, Variant::Subtracted));
  EXPECT_NO_THROW(StateSpec::make(ModelParams{0.0, 1.2}, 2, Variant::Added));
}

TEST(Variant, ParseAndPrint) {
  EXPECT_EQ(parse_variant("add"), Variant::Added);
  EXPECT_EQ(parse_variant("sub"), Variant::Subtracted);
  EXPECT_EQ(to_string(Variant::Added), "add");
  EXPECT_THROW(parse_variant("plus"), Error);
}

TEST(AmplifiedParams, MatchesDirectFormula) {
  for (double nbar : {0.0, 0.1, 0.5, 1.5, 5.0}) {
    for (double gain : {0.3, 0.9, 1.0, 1.05, 1.2}) {
      const ModelParams p{nbar, gain};
      if (classify_region(p) != RegionClass::Physical) continue;
      const AmplifiedParams a = amplified_params(p);
      const double expect_n0 = 1.0 / (1.0 - nbar * (gain * gain - 1.0));
      EXPECT_NEAR(a.n0, expect_n0, 1e-14 * expect_n0);
      const double expect = static_cast<double>(oracle::amplified_nbar(nbar, gain));
      EXPECT_NEAR(a.nbar_amp, expect, 1e-13 * std::max(1.0, expect)) << nbar << " " << gain;
    }
  }
}

TEST(AmplifiedParams, UnitGainIsIdentity) {
  for (double nbar : {0.0, 0.3, 7.0}) {
    EXPECT_EQ(amplified_params(ModelParams{nbar, 1.0}).nbar_amp, nbar);
    EXPECT_EQ(amplified_params(ModelParams{nbar, 1.0}).n0, 1.0);
  }
}

TEST(AmplifiedParams, ReferencePoint) {
  // nbar = 1.5, g = 1.2: N0 = 1/(1 - 1.5*0.44) = 1/0.34, N = 1.44*1.5/0.34.
  const AmplifiedParams a = amplified_params(ModelParams{1.5, 1.2});
  EXPECT_NEAR(a.n0, 1.0 / 0.34, 1e-13);
  EXPECT_NEAR(a.nbar_amp, 2.16 / 0.34, 1e-13);
}

TEST(AmplifiedParams, AttenuationShrinksMean) {
  for (double nbar : {0.1, 1.0, 10.0}) {
    double prev = nbar;
    for (double gain : {0.9, 0.6, 0.3}) {
      const double n = amplified_params(ModelParams{nbar, gain}).nbar_amp;
      EXPECT_LT(n, prev);
      EXPECT_GE(n, 0.0);
      prev = n;
    }
  }
}

TEST(AmplifiedParams, IncreasingInGainAndNbar) {
  double prev = 0.0;
  for (double gain = 1.0; gain < critical_gain(1.5) - 1e-3; gain += 0.01) {
    const double n = amplified_params(ModelParams{1.5, gain}).nbar_amp;
    EXPECT_GT(n, prev);
    prev = n;
  }
  prev = 0.0;
  for (double nbar = 0.01; nbar < critical_nbar(1.08) - 1e-2; nbar += 0.05) {
    const double n = amplified_params(ModelParams{nbar, 1.08}).nbar_amp;
    EXPECT_GT(n, prev);
    prev = n;
  }
}

TEST(Region, RatioAndClasses) {
  EXPECT_NEAR(convergence_ratio(ModelParams{1.5, 1.2}), 1.44 * 1.5 / 2.5, 1e-15);
  EXPECT_EQ(classify_region(ModelParams{1.5, 1.2}), RegionClass::Physical);
  EXPECT_EQ(classify_region(ModelParams{1.5, critical_gain(1.5)}), RegionClass::Boundary);
  EXPECT_EQ(classify_region(ModelParams{1.5, 1.3}), RegionClass::Unphysical);
  // The 4-digit rounded critical gain already lies past the boundary.
  EXPECT_EQ(classify_region(ModelParams{1.5, 1.2910}), RegionClass::Unphysical);
  EXPECT_EQ(classify_region(ModelParams{0.0, 100.0}), RegionClass::Physical);
  EXPECT_EQ(classify_region(ModelParams{100.0, 0.5}), RegionClass::Physical);
}

TEST(Region, ErrorsCarryCriticalGain) {
  try {
    amplified_params(ModelParams{1.5, 1.3});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnphysicalRegime);
    EXPECT_NE(std::string(e.what()).find("1.2910"), std::string::npos) << e.what();
  }
  EXPECT_EQ(kind_of([] { amplified_params(ModelParams{1.5, critical_gain(1.5)}); }),
            ErrorKind::NearCritical);
}

TEST(Region, FormalBranchIsNegativeBeyondCritical) {
  const ModelParams p{1.5, 1.4};
  const AmplifiedParams a = amplified_params_formal(p);
  EXPECT_LT(a.nbar_amp, 0.0);
  const double g2 = 1.96;
  EXPECT_NEAR(a.nbar_amp, g2 * 1.5 / (1.0 - 1.5 * (g2 - 1.0)), 1e-13);
}

TEST(Critical, PrintedValues) {
  EXPECT_NEAR(critical_gain(1.1), 1.3817, 1e-4);
  EXPECT_NEAR(critical_gain(1.5), 1.2910, 1e-4);
  EXPECT_NEAR(critical_nbar(1.06), 8.0906, 1e-4);
  EXPECT_NEAR(critical_nbar(1.08), 6.0096, 1e-4);
}

TEST(Critical, InverseRoundTrip) {
  for (double nbar : {0.01, 0.5, 1.5, 3.0, 100.0}) {
    EXPECT_NEAR(critical_nbar(critical_gain(nbar)), nbar, 1e-11 * nbar);
    EXPECT_NEAR(convergence_ratio(ModelParams{nbar, critical_gain(nbar)}), 1.0, 1e-14);
  }
}

TEST(Critical, DomainErrors) {
  EXPECT_EQ(kind_of([] { critical_gain(0.0); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { critical_gain(-1.0); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { critical_nbar(1.0); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { critical_nbar(0.8); }), ErrorKind::DomainError);
}

TEST(Normalization, ReferenceConstant) {
  // N_{3+} at nbar=1.5, g=1.2: 3! (N+1)^3 with N = 2.16/0.34.
  const StateSpec s = StateSpec::make(ModelParams{1.5, 1.2}, 3, Variant::Added);
  const NormalizationConstants c = normalization_constants(s);
  const double n = 2.16 / 0.34;
  EXPECT_NEAR(c.n_m, 6.0 * std::pow(n + 1.0, 3), 1e-9);
  EXPECT_NEAR(c.n_m, 2385.2534, 1e-3);
  const std::size_t cutoff = build_state(s, 1e-16).cutoff + 32;
  const double trace = oracle_log_trace(ModelParams{n, 1.0}, 3, Variant::Added, cutoff,
                                        Ordering::GainThenPhotons);
  EXPECT_NEAR(std::exp(trace) / c.n_m, 1.0, 1e-11);
}

TEST(Normalization, OrderingsMatchBruteForceTrace) {
  for (const Variant v : {Variant::Added, Variant::Subtracted}) {
    for (double gain : {0.9, 1.05, 1.2}) {
      for (int m : {1, 2, 5}) {
        const StateSpec s = StateSpec::make(ModelParams{1.5, gain}, m, v);
        const NormalizationConstants c = normalization_constants(s);
        const std::size_t cutoff = build_state(s, 1e-16).cutoff + 32;
        const double t1 = oracle_log_trace(s.params, m, v, cutoff, Ordering::PhotonsThenGain);
        const double t2 = oracle_log_trace(s.params, m, v, cutoff, Ordering::GainThenPhotons);
        EXPECT_NEAR(c.log_n_m_1, t1, 1e-11) << to_string(v) << " g=" << gain << " m=" << m;
        EXPECT_NEAR(c.log_n_m_2, t2, 1e-11) << to_string(v) << " g=" << gain << " m=" << m;
      }
    }
  }
}

TEST(Normalization, SubtractedVacuumAndOverflow) {
  const StateSpec add = StateSpec::from_amplified(0.0, 4, Variant::Added);
  EXPECT_DOUBLE_EQ(normalization_constants(add).n_m, 24.0);
  // 60! (1e6 + 1)^60 is about e^1017.
  const StateSpec big = StateSpec::from_amplified(1e6, 60, Variant::Added);
  EXPECT_EQ(kind_of([&] { normalization_constants(big); }), ErrorKind::Overflow);
}
