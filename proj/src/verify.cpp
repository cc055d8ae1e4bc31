#include "thermamp/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "thermamp/error.hpp"
#include "thermamp/fock.hpp"
#include "thermamp/purity.hpp"
#include "thermamp/simd/kernels.hpp"
#include "thermamp/special.hpp"
#include "thermamp/wigner.hpp"

namespace thermamp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  const double scale = std::max(std::fabs(a), std::fabs(b));
  if (!std::isfinite(scale)) return kInf;
  return std::fabs(a - b) / scale;
}

// Rebuild the spec from its (perturbed) amplified mean photon number.
StateSpec fuzzed(const StateSpec& s, double fuzz) {
  if (fuzz == 0.0) return s;
  return StateSpec::from_amplified(amplified_nbar(s) * (1.0 + fuzz), s.m, s.variant);
}

Json spec_json(const StateSpec& s) {
  return Json{{"nbar", s.params.nbar},
              {"gain", s.params.gain},
              {"m", s.m},
              {"variant", std::string(to_string(s.variant))}};
}

class Recorder {
 public:
  explicit Recorder(VerificationReport& report) : report_(report) {}

  // Accumulates the worst residual of one named check.
  struct Check {
    CheckResult result;
    void observe(double residual, const Json& where) {
      if (std::isnan(residual)) residual = kInf;
      if (result.parameters.is_null() || residual > result.max_residual) {
        result.max_residual = std::max(result.max_residual, residual);
        result.parameters = where;
      }
    }
  };

  Check start(std::string name, double tolerance) {
    Check c;
    c.result.name = std::move(name);
    c.result.tolerance = tolerance;
    return c;
  }

  void finish(Check c) {
    c.result.pass = c.result.max_residual <= c.result.tolerance;
    report_.checks.push_back(std::move(c.result));
  }

  // A check whose body threw is recorded as failed rather than aborting the run.
  template <class Body>
  void run(std::string name, double tolerance, Body body) {
    Check c = start(name, tolerance);
    try {
      body(c);
    } catch (const std::exception& e) {
      c.result.max_residual = kInf;
      c.result.parameters = Json{{"error", e.what()}};
    }
    finish(std::move(c));
  }

 private:
  VerificationReport& report_;
};

int printed_decimals(const std::string& s) {
  const auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

// Same terms as the closed form with every sign made positive: the size the
// alternating sum cancels down from.
double wigner_term_envelope(const StateSpec& s, PhasePoint p) {
  const double n = amplified_nbar(s);
  const double w = 2.0 * n + 1.0;
  const double r = p.beta_abs2();
  const double v = 4.0 * (s.variant == Variant::Added ? n + 1.0 : n) * r / w;
  const auto m = static_cast<std::size_t>(s.m);
  double poly = 0.0;
  for (std::size_t i = m + 1; i-- > 0;) {
    poly = poly * v + std::exp(log_binomial(m, i) - log_factorial(i));
  }
  return 2.0 / (std::numbers::pi * w) * std::exp(-static_cast<double>(m) * std::log(w) - 2.0 * r / w) * poly;
}

std::vector<PhasePoint> square_grid(double half_width, std::size_t n) {
  std::vector<PhasePoint> pts;
  pts.reserve(n * n);
  const GridAxis axis{-half_width, half_width, n};
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) pts.push_back(PhasePoint{axis.at(ix), axis.at(iy)});
  }
  return pts;
}

}  // namespace

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

Json VerificationReport::to_json() const {
  Json out = Json::object();
  out["meta"] = Json{{"tool", "thermamp"}, {"version", std::string(kVersion)}};
  Json list = Json::array();
  std::size_t failed = 0;
  for (const auto& c : checks) {
    if (!c.pass) ++failed;
    list.push_back(Json{{"check_name", c.name},
                        {"parameters", c.parameters},
                        {"max_residual", std::isfinite(c.max_residual) ? Json(c.max_residual)
                                                                       : Json(nullptr)},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}});
  }
  out["data"] = Json{{"checks", list},
                     {"total", checks.size()},
                     {"failed", failed},
                     {"all_passed", failed == 0}};
  return out;
}

std::vector<StateSpec> standard_grid(Variant variant) {
  std::vector<StateSpec> out;
  for (double nbar : {0.1, 0.5, 1.5, 5.0}) {
    for (double gain : {0.9, 1.0, 1.05, 1.2}) {
      const ModelParams p{nbar, gain};
      if (classify_region(p) != RegionClass::Physical) continue;
      for (int m : {0, 1, 2, 3, 5, 8}) out.push_back(StateSpec::make(p, m, variant));
    }
  }
  return out;
}

std::vector<PrintedColumn> table1_reference() {
  const ModelParams amplified{1.5, 1.2};
  const ModelParams plain{1.5, 1.0};
  return {
      {"rho_th(nbar)", StateSpec::make(plain, 0, Variant::Added),
       {"0.4", "0.24", "0.144", "0.0864", "0.05184", "0.031104"}},
      {"rho_th(N)", StateSpec::make(amplified, 0, Variant::Added),
       {"0.136", "0.1175", "0.1015", "0.08772", "0.07579", "0.06548"}},
      {"rho_3+", StateSpec::make(amplified, 3, Variant::Added),
       {"0", "0", "0", "0.000342102", "0.0011823", "0.00255378"}},
      {"rho_3-", StateSpec::make(amplified, 3, Variant::Subtracted),
       {"0.000342102", "0.0011823", "0.00255378", "0.00441293", "0.00667235", "0.00922385"}},
  };
}

VerificationReport run_verification(const VerifyOptions& options) {
  VerificationReport report;
  Recorder rec(report);
  const double fuzz = options.fuzz;
  const double tail_eps = options.tail_eps;

  std::vector<StateSpec> grid = standard_grid(Variant::Added);
  const std::vector<StateSpec> sub_grid = standard_grid(Variant::Subtracted);
  std::vector<StateSpec> both = grid;
  both.insert(both.end(), sub_grid.begin(), sub_grid.end());

  // Each printed value is compared at the larger of 5e-7 and half a unit in
  // its last printed digit; the printed table mixes 4 and 6 significant digits.
  rec.run("printed_pnd_table", 1.0, [&](auto& c) {
    for (const auto& col : table1_reference()) {
      const StateSpec s = fuzzed(col.spec, fuzz);
      for (std::size_t k = 0; k < col.printed.size(); ++k) {
        double printed = 0.0;
        const std::string& text = col.printed[k];
        std::from_chars(text.data(), text.data() + text.size(), printed);
        const double tol = std::max(5e-7, 0.5 * std::pow(10.0, -printed_decimals(text)));
        c.observe(std::fabs(pnd_value(s, k) - printed) / tol,
                  Json{{"column", col.label}, {"k", k}, {"printed", text}, {"tolerance", tol}});
      }
    }
  });

  rec.run("critical_values", 1e-4, [&](auto& c) {
    c.observe(std::fabs(critical_gain(1.1) - 1.3817), Json{{"critical_gain", 1.1}});
    c.observe(std::fabs(critical_gain(1.5) - 1.2910), Json{{"critical_gain", 1.5}});
    c.observe(std::fabs(critical_nbar(1.06) - 8.0906), Json{{"critical_nbar", 1.06}});
    c.observe(std::fabs(critical_nbar(1.08) - 6.0096), Json{{"critical_nbar", 1.08}});
  });

  rec.run("critical_inverse", 1e-12, [&](auto& c) {
    for (int i = 1; i <= 1000; ++i) {
      const double nbar = 0.1 * i;
      c.observe(rel_diff(critical_nbar(critical_gain(nbar)), nbar), Json{{"nbar", nbar}});
    }
  });

  rec.run("region_consistency", 0.0, [&](auto& c) {
    for (int i = 0; i <= 50; ++i) {
      for (int j = 0; j <= 50; ++j) {
        const ModelParams p{0.1 * i, 0.5 + 0.05 * j};
        bool ok = true;
        try {
          amplified_params(p);
        } catch (const Error&) {
          ok = false;
        }
        const bool physical = classify_region(p) == RegionClass::Physical;
        c.observe(ok == physical ? 0.0 : 1.0, Json{{"nbar", p.nbar}, {"gain", p.gain}});
      }
    }
  });

  rec.run("shift_identity", 1e-13, [&](auto& c) {
    for (const StateSpec& s : grid) {
      if (s.m == 0) continue;
      const StateSpec add = fuzzed(s, fuzz);
      const StateSpec sub = fuzzed(StateSpec::make(s.params, s.m, Variant::Subtracted), fuzz);
      for (std::size_t k = 0; k <= 200; ++k) {
        c.observe(rel_diff(pnd_value(add, k + static_cast<std::size_t>(s.m)), pnd_value(sub, k)),
                  spec_json(s));
      }
    }
  });

  rec.run("vanishing_head", 0.0, [&](auto& c) {
    for (const StateSpec& s : grid) {
      const DiagonalFockState st = build_state(s, tail_eps);
      for (int k = 0; k < s.m; ++k) {
        c.observe(std::fabs(pnd_value(s, static_cast<std::size_t>(k))) +
                      std::fabs(st.weights[static_cast<std::size_t>(k)]),
                  spec_json(s));
      }
    }
  });

  rec.run("pnd_vs_oracle", 1e-11, [&](auto& c) {
    for (const StateSpec& s : both) {
      const DiagonalFockState analytic = build_state(s, tail_eps);
      const std::size_t in_cutoff = build_state(s, 1e-16).cutoff + 16 + static_cast<std::size_t>(s.m);
      const DiagonalFockState oracle = oracle_pipeline(s.params, s.m, s.variant, in_cutoff);
      const StateSpec fs = fuzzed(s, fuzz);
      for (std::size_t k = 0; k <= analytic.cutoff; ++k) {
        c.observe(rel_diff(oracle.weights[k], pnd_value(fs, k)), spec_json(s));
      }
    }
  });

  rec.run("oracle_orderings_agree", 1e-12, [&](auto& c) {
    for (const StateSpec& s : both) {
      const std::size_t cutoff = build_state(s, 1e-16).cutoff + 16;
      const auto a = oracle_pipeline(s.params, s.m, s.variant, cutoff, Ordering::GainThenPhotons);
      const auto b = oracle_pipeline(s.params, s.m, s.variant, cutoff, Ordering::PhotonsThenGain);
      for (std::size_t k = 0; k < a.weights.size(); ++k) {
        if (a.weights[k] < 1e-250) continue;
        c.observe(rel_diff(a.weights[k], b.weights[k]), spec_json(s));
      }
    }
  });

  rec.run("normalization_constants_vs_trace", 1e-10, [&](auto& c) {
    for (const StateSpec& s : both) {
      const NormalizationConstants exact = normalization_constants(s);
      const double shift = normalization_constants(fuzzed(s, fuzz)).log_n_m - exact.log_n_m;
      const std::size_t cutoff = build_state(s, 1e-16).cutoff + 16;
      const double nbar_amp = amplified_nbar(s);
      const double log_n_m = oracle_log_trace(ModelParams{nbar_amp, 1.0}, s.m, s.variant, cutoff,
                                              Ordering::GainThenPhotons);
      const double log_n_1 =
          oracle_log_trace(s.params, s.m, s.variant, cutoff, Ordering::PhotonsThenGain);
      const double log_n_2 =
          oracle_log_trace(s.params, s.m, s.variant, cutoff, Ordering::GainThenPhotons);
      c.observe(std::fabs(std::expm1(exact.log_n_m + shift - log_n_m)), spec_json(s));
      c.observe(std::fabs(std::expm1(exact.log_n_m_1 + shift - log_n_1)), spec_json(s));
      c.observe(std::fabs(std::expm1(exact.log_n_m_2 + shift - log_n_2)), spec_json(s));
    }
  });

  rec.run("matrix_element_diagonal", 1e-10, [&](auto& c) {
    for (const StateSpec& s : both) {
      const StateSpec fs = fuzzed(s, fuzz);
      const StateSpec exact = s;
      for (std::size_t k = 0; k <= 60; ++k) {
        c.observe(rel_diff(matrix_element(exact, k, k), pnd_value(fs, k)), spec_json(s));
      }
    }
  });

  rec.run("matrix_element_off_diagonal", 0.0, [&](auto& c) {
    for (const StateSpec& s : both) {
      for (std::size_t k = 0; k <= 12; ++k) {
        for (std::size_t l = 0; l <= 12; ++l) {
          if (k != l) c.observe(std::fabs(matrix_element(s, k, l)), spec_json(s));
        }
      }
    }
  });

  rec.run("state_normalization", 0.0, [&](auto& c) {
    for (const StateSpec& s : both) {
      const DiagonalFockState st = build_state(s, tail_eps);
      const double mass = st.retained_mass();
      c.observe(std::max({0.0, (1.0 - 2.0 * tail_eps) - mass, mass - 1.0}), spec_json(s));
    }
  });

  rec.run("state_mass_balance", 1e-12, [&](auto& c) {
    for (const StateSpec& s : both) {
      const DiagonalFockState st = build_state(s, tail_eps);
      c.observe(std::fabs(st.retained_mass() + st.tail_mass - 1.0), spec_json(s));
    }
  });

  rec.run("purity_identity", 1e-12, [&](auto& c) {
    for (double nbar_amp : {0.1, 1.0, 6.352941, 20.0}) {
      for (int m = 0; m <= 10; ++m) {
        const double add =
            purity_analytic(fuzzed(StateSpec::from_amplified(nbar_amp, m, Variant::Added), fuzz));
        const double sub = purity_analytic(
            fuzzed(StateSpec::from_amplified(nbar_amp, m, Variant::Subtracted), fuzz));
        c.observe(rel_diff(add, sub), Json{{"nbar_amp", nbar_amp}, {"m", m}});
      }
    }
  });

  rec.run("purity_m0_closed_form", 1e-14, [&](auto& c) {
    for (double nbar_amp : {0.1, 1.0, 6.352941, 20.0}) {
      const StateSpec s = fuzzed(StateSpec::from_amplified(nbar_amp, 0, Variant::Added), fuzz);
      c.observe(rel_diff(purity_analytic(s), 1.0 / (2.0 * nbar_amp + 1.0)),
                Json{{"nbar_amp", nbar_amp}});
    }
  });

  rec.run("purity_analytic_vs_numeric", 1e-9, [&](auto& c) {
    for (const StateSpec& s : both) {
      const double numeric = purity_numeric(build_state(s, tail_eps));
      c.observe(std::fabs(purity_analytic(fuzzed(s, fuzz)) - numeric), spec_json(s));
    }
  });

  rec.run("mean_shift", 1e-10, [&](auto& c) {
    for (const StateSpec& s : grid) {
      if (s.m == 0) continue;
      const double add = mean_photon_number(build_state(s, tail_eps));
      const double sub =
          mean_photon_number(build_state(StateSpec::make(s.params, s.m, Variant::Subtracted), tail_eps));
      c.observe(rel_diff(add - sub, static_cast<double>(s.m)), spec_json(s));
    }
  });

  const std::vector<PhasePoint> pts17 = square_grid(4.0, 17);

  rec.run("wigner_vs_laguerre_oracle", 1e-9, [&](auto& c) {
    for (const StateSpec& s : both) {
      const DiagonalFockState st = build_state(s, tail_eps);
      std::vector<double> oracle(pts17.size());
      std::vector<double> closed(pts17.size());
      wigner_oracle(st, pts17, oracle);
      WignerEvaluator(fuzzed(s, fuzz)).evaluate(pts17, closed);
      for (std::size_t i = 0; i < pts17.size(); ++i) {
        c.observe(std::fabs(oracle[i] - closed[i]), spec_json(s));
      }
    }
  });

  rec.run("wigner_vs_bilinear_sum", 1e-12, [&](auto& c) {
    for (const StateSpec& s : both) {
      const WignerEvaluator eval(fuzzed(s, fuzz));
      for (const PhasePoint& p : pts17) {
        const double ref = wigner_value_bilinear(s, p);
        c.observe(std::fabs(eval.value(p) - ref) / wigner_term_envelope(s, p), spec_json(s));
      }
    }
  });

  rec.run("wigner_m1_closed_form", 1e-12, [&](auto& c) {
    for (const StateSpec& s0 : both) {
      if (s0.m != 1) continue;
      const StateSpec s = fuzzed(s0, fuzz);
      const double n = amplified_nbar(s0);
      const double w = 2.0 * n + 1.0;
      const bool added = s0.variant == Variant::Added;
      for (const PhasePoint& p : pts17) {
        const double r = p.beta_abs2();
        const double quad = 4.0 * (added ? n + 1.0 : n) / (w * w) * r;
        const double t = added ? quad - 1.0 / w : quad + 1.0 / w;
        const double scale = (quad + 1.0 / w) * wigner_thermal(n, p);
        c.observe(std::fabs(wigner_value(s, p) - t * wigner_thermal(n, p)) / scale, spec_json(s0));
      }
    }
  });

  rec.run("wigner_rotational_symmetry", 1e-12, [&](auto& c) {
    std::mt19937_64 rng(20241015);
    std::uniform_real_distribution<double> coord(-4.0, 4.0);
    for (const StateSpec& s : both) {
      const WignerEvaluator eval(s);
      for (int i = 0; i < 64; ++i) {
        const PhasePoint p{coord(rng), coord(rng)};
        const PhasePoint q{std::hypot(p.x, p.y), 0.0};
        c.observe(std::fabs(eval.value(p) - eval.value(q)), spec_json(s));
      }
    }
  });

  rec.run("negativity_radius_m1", 1e-8, [&](auto& c) {
    for (const StateSpec& s : grid) {
      if (s.m != 1) continue;
      const std::vector<double> roots = section_roots(s);
      if (roots.size() != 1) {
        c.observe(kInf, spec_json(s));
        continue;
      }
      const double radius = negativity_radius_m1(amplified_nbar(fuzzed(s, fuzz)));
      c.observe(std::fabs(roots.front() / std::sqrt(2.0) - radius), spec_json(s));
    }
  });

  rec.run("subtracted_positivity", 0.0, [&](auto& c) {
    for (const StateSpec& s : sub_grid) {
      if (s.m == 0) continue;
      const WignerEvaluator eval(s);
      std::vector<double> w(pts17.size());
      eval.evaluate(pts17, w);
      for (double v : w) c.observe(std::max(0.0, -v), spec_json(s));
      c.observe(std::max(0.0, -min_section(s).w_min), spec_json(s));
    }
  });

  // Ceilings 5e-1, 5e-2, 5e-3 for m = 1, 3, 5; the residual is |w_min| over
  // its ceiling, and a non-negative minimum counts as a failure.
  rec.run("section_minima_ceilings", 1.0, [&](auto& c) {
    const std::pair<int, double> cases[] = {{1, 5e-1}, {3, 5e-2}, {5, 5e-3}};
    for (const auto& [m, ceiling] : cases) {
      for (double gain : {1.05, 1.1, 1.2}) {
        const StateSpec s = StateSpec::make(ModelParams{1.5, gain}, m, Variant::Added);
        const SectionMinimum sm = min_section(s);
        c.observe(sm.w_min < 0.0 ? std::fabs(sm.w_min) / ceiling : kInf,
                  Json{{"m", m}, {"gain", gain}, {"w_min", sm.w_min}, {"x_min", sm.x_min}});
      }
    }
  });

  rec.run("wigner_grid_normalization", 1e-3, [&](auto& c) {
    const StateSpec cases[] = {
        StateSpec::make(ModelParams{1.5, 1.0}, 0, Variant::Added),
        StateSpec::make(ModelParams{0.5, 1.0}, 1, Variant::Added),
        StateSpec::make(ModelParams{0.5, 1.0}, 1, Variant::Subtracted),
    };
    for (const StateSpec& s : cases) {
      const WignerGrid g = wigner_grid(fuzzed(s, fuzz), GridAxis{-6, 6, 241}, GridAxis{-6, 6, 241});
      c.observe(std::fabs(g.integral() - 1.0), spec_json(s));
    }
  });

  rec.run("simd_matches_scalar", 1e-12, [&](auto& c) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> arg(0.0, 64.0);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<double> x(103);
    for (double& v : x) v = arg(rng);
    std::vector<double> a(x.size()), b(x.size());
    for (std::size_t terms : {1u, 2u, 9u, 200u}) {
      std::vector<double> cs(terms);
      for (double& v : cs) v = coef(rng);
      simd::laguerre_series(cs, x, a);
      simd::scalar::laguerre_series(cs, x, b);
      double scale = 0.0;
      for (double v : b) scale = std::max(scale, std::fabs(v));
      for (std::size_t i = 0; i < x.size(); ++i) {
        c.observe(std::fabs(a[i] - b[i]) / std::max(scale, 1.0),
                  Json{{"kernel", "laguerre_series"}, {"terms", terms}});
      }
    }
    const std::vector<double> poly{1.0, -3.0, 1.5, -0.25, 1.0 / 24.0};
    const std::vector<double> abs_poly{1.0, 3.0, 1.5, 0.25, 1.0 / 24.0};
    std::vector<double> scale(x.size());
    simd::horner(poly, x, a);
    simd::scalar::horner(poly, x, b);
    simd::scalar::horner(abs_poly, x, scale);
    for (std::size_t i = 0; i < x.size(); ++i) {
      c.observe(std::fabs(a[i] - b[i]) / scale[i], Json{{"kernel", "horner"}});
    }
  });

  return report;
}

}  // namespace thermamp
