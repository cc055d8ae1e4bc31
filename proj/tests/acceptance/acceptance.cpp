// Acceptance gate: every criterion at its pinned tolerance, one line each.
// Usage: acceptance [--criterion N]

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "thermamp/fock.hpp"
#include "thermamp/params.hpp"
#include "thermamp/purity.hpp"
#include "thermamp/verify.hpp"
#include "thermamp/wigner.hpp"

using namespace thermamp;

namespace {

struct Outcome {
  bool pass = true;
  double worst = 0.0;  // largest residual seen, in the criterion's own units
  std::string detail;

  void observe(double residual, double tol, const std::string& where) {
    worst = std::max(worst, residual);
    if (!(residual <= tol)) {
      if (pass || detail.size() < 400) {
        if (!detail.empty()) detail += "; ";
        detail += where;
      }
      pass = false;
    }
  }
  void require(bool ok, const std::string& where) {
    if (!ok) {
      if (!detail.empty()) detail += "; ";
      detail += where;
      pass = false;
    }
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string tag(const StateSpec& s) {
  return std::string(to_string(s.variant)) + " nbar=" + fmt(s.params.nbar) + " g=" +
         fmt(s.params.gain) + " m=" + std::to_string(s.m);
}

double rel(double a, double b) {
  if (a == b) return 0.0;
  return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
}

std::vector<StateSpec> grid_both() {
  std::vector<StateSpec> out = standard_grid(Variant::Added);
  const std::vector<StateSpec> sub = standard_grid(Variant::Subtracted);
  out.insert(out.end(), sub.begin(), sub.end());
  return out;
}

std::vector<PhasePoint> grid17() {
  std::vector<PhasePoint> pts;
  for (int i = 0; i < 17; ++i) {
    for (int j = 0; j < 17; ++j) pts.push_back({-4.0 + 0.5 * i, -4.0 + 0.5 * j});
  }
  return pts;
}

// 1. Printed reference table at nbar = 1.5, g = 1.2, k = 0..5.
Outcome ac1() {
  struct Column {
    const char* name;
    StateSpec spec;
    double printed[6];
  };
  const ModelParams amp{1.5, 1.2};
  const Column cols[] = {
      {"rho_th(nbar)", StateSpec::make(ModelParams{1.5, 1.0}, 0, Variant::Added),
       {0.4, 0.24, 0.144, 0.0864, 0.05184, 0.031104}},
      {"rho_th(N)", StateSpec::make(amp, 0, Variant::Added),
       {0.136, 0.1175, 0.1015, 0.08772, 0.07579, 0.06548}},
      {"rho_3+", StateSpec::make(amp, 3, Variant::Added),
       {0.0, 0.0, 0.0, 0.000342102, 0.0011823, 0.00255378}},
      {"rho_3-", StateSpec::make(amp, 3, Variant::Subtracted),
       {0.000342102, 0.0011823, 0.00255378, 0.00441293, 0.00667235, 0.00922385}},
  };
  Outcome o;
  for (const Column& c : cols) {
    for (std::size_t k = 0; k < 6; ++k) {
      const double v = pnd_value(c.spec, k);
      o.observe(std::fabs(v - c.printed[k]), 5e-7,
                std::string(c.name) + "[k=" + std::to_string(k) + "] printed " + fmt(c.printed[k]) +
                    " computed " + fmt(v));
    }
  }
  return o;
}

// 2. Critical gain / critical nbar against the printed 4-decimal values.
Outcome ac2() {
  Outcome o;
  o.observe(std::fabs(critical_gain(1.1) - 1.3817), 1e-4, "critical_gain(1.1)");
  o.observe(std::fabs(critical_gain(1.5) - 1.2910), 1e-4, "critical_gain(1.5)");
  o.observe(std::fabs(critical_nbar(1.06) - 8.0906), 1e-4, "critical_nbar(1.06)");
  o.observe(std::fabs(critical_nbar(1.08) - 6.0096), 1e-4, "critical_nbar(1.08)");
  return o;
}

// 3. Added weights are subtracted weights shifted by m.
Outcome ac3() {
  Outcome o;
  for (const StateSpec& add : standard_grid(Variant::Added)) {
    if (add.m != 1 && add.m != 3 && add.m != 5 && add.m != 8) continue;
    const StateSpec sub = StateSpec::make(add.params, add.m, Variant::Subtracted);
    for (std::size_t k = 0; k <= 200; ++k) {
      o.observe(rel(pnd_value(add, k + static_cast<std::size_t>(add.m)), pnd_value(sub, k)), 1e-13,
                tag(add) + " k=" + std::to_string(k));
    }
  }
  return o;
}

// 4. Equal purities for added/subtracted, thermal purity 1/(2N+1).
Outcome ac4() {
  Outcome o;
  for (double n : {0.1, 1.0, 6.352941, 20.0}) {
    for (int m = 0; m <= 10; ++m) {
      const double a = purity_analytic(StateSpec::from_amplified(n, m, Variant::Added));
      const double s = purity_analytic(StateSpec::from_amplified(n, m, Variant::Subtracted));
      o.observe(rel(a, s), 1e-12, "N=" + fmt(n) + " m=" + std::to_string(m));
    }
    const double p0 = purity_analytic(StateSpec::from_amplified(n, 0, Variant::Added));
    o.observe(std::fabs(p0 - 1.0 / (2.0 * n + 1.0)), 1e-14, "P0 N=" + fmt(n));
  }
  return o;
}

// 5. Operator-pipeline oracle against the closed-form distributions.
Outcome ac5() {
  Outcome o;
  for (const StateSpec& s : grid_both()) {
    const DiagonalFockState st = build_state(s, 1e-12);
    const std::size_t cutoff = build_state(s, 1e-16).cutoff + 16 + static_cast<std::size_t>(s.m);
    const DiagonalFockState orc = oracle_pipeline(s.params, s.m, s.variant, cutoff);
    for (std::size_t k = 0; k <= st.cutoff; ++k) {
      o.observe(rel(orc.weights[k], pnd_value(s, k)), 1e-11, tag(s) + " k=" + std::to_string(k));
    }
  }
  return o;
}

// 6. Closed-form Wigner function against the Fock-basis Laguerre sum, both
// the library oracle and an independent long double one.
Outcome ac6() {
  Outcome o;
  const auto pts = grid17();
  for (const StateSpec& s : grid_both()) {
    const WignerEvaluator eval(s);
    const DiagonalFockState st = build_state(s, 1e-12);
    std::vector<double> lib(pts.size());
    wigner_oracle(st, pts, lib);
    const double n = amplified_nbar(s);
    const std::size_t kmax = build_state(s, 1e-18).cutoff + 8;
    const auto w = s.variant == Variant::Added ? oracle::added_weights(n, s.m, kmax)
                                               : oracle::subtracted_weights(n, s.m, kmax);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double v = eval.value(pts[i]);
      const double ind = static_cast<double>(oracle::wigner_laguerre(w, pts[i].beta_abs2()));
      const std::string where = tag(s) + " x=" + fmt(pts[i].x) + " y=" + fmt(pts[i].y);
      o.observe(std::fabs(v - lib[i]), 1e-9, where + " (library oracle)");
      o.observe(std::fabs(v - ind), 1e-9, where + " (independent oracle)");
    }
  }
  return o;
}

// 7. m = 1 added: single sign change at the negativity radius. Subtracted
// m = 1..8: no negative sample.
Outcome ac7() {
  Outcome o;
  for (const StateSpec& s : standard_grid(Variant::Added)) {
    if (s.m != 1) continue;
    const double radius = negativity_radius_m1(amplified_nbar(s));
    const auto roots = section_roots(s);
    o.require(roots.size() == 1, tag(s) + " root count " + std::to_string(roots.size()));
    if (roots.size() == 1) o.observe(std::fabs(roots[0] / std::sqrt(2.0) - radius), 1e-8, tag(s));
    // Sign bracket around the radius, in x = sqrt(2) |beta|.
    const WignerEvaluator eval(s);
    const double xin = std::sqrt(2.0) * (radius - 1e-8);
    const double xout = std::sqrt(2.0) * (radius + 1e-8);
    o.require(eval.value({xin, 0.0}) < 0.0 && eval.value({xout, 0.0}) > 0.0,
              tag(s) + " no sign change within 1e-8 of the radius");
  }
  const auto pts = grid17();
  for (double nbar : {0.1, 0.5, 1.5, 5.0}) {
    for (double gain : {0.9, 1.0, 1.05, 1.2}) {
      const ModelParams p{nbar, gain};
      if (classify_region(p) != RegionClass::Physical) continue;
      for (int m = 1; m <= 8; ++m) {
        const StateSpec s = StateSpec::make(p, m, Variant::Subtracted);
        const WignerEvaluator eval(s);
        double lowest = 0.0;
        for (const PhasePoint& q : pts) lowest = std::min(lowest, eval.value(q));
        const double extent = section_extent(amplified_nbar(s));
        for (int i = 0; i <= 2000; ++i) lowest = std::min(lowest, eval.value({extent * i / 2000.0, 0.0}));
        o.observe(-lowest, 0.0, tag(s) + " W=" + fmt(lowest));
      }
    }
  }
  return o;
}

// 8. Section minima are negative and below the per-m ceiling.
Outcome ac8() {
  Outcome o;
  const std::pair<int, double> cases[] = {{1, 1e-1 * 5}, {3, 1e-2 * 5}, {5, 1e-3 * 5}};
  for (const auto& [m, ceiling] : cases) {
    for (double gain : {1.05, 1.1, 1.2}) {
      const StateSpec s = StateSpec::make(ModelParams{1.5, gain}, m, Variant::Added);
      const SectionMinimum sm = min_section(s);
      o.require(sm.w_min < 0.0, tag(s) + " w_min not negative");
      o.observe(std::fabs(sm.w_min) / ceiling, 1.0, tag(s) + " |w_min|=" + fmt(std::fabs(sm.w_min)));
    }
  }
  return o;
}

// 9. Normalization of every built state and analytic/numeric purity.
Outcome ac9() {
  Outcome o;
  for (const StateSpec& s : grid_both()) {
    for (double eps : {1e-8, 1e-12}) {
      const DiagonalFockState st = build_state(s, eps);
      const double sum = st.retained_mass();
      o.require(sum >= 1.0 - 2.0 * eps && sum <= 1.0,
                tag(s) + " eps=" + fmt(eps) + " sum=" + fmt(sum));
    }
    const PurityResult r = purity(s, 1e-12);
    o.observe(r.residual, 1e-9, tag(s) + " purity");
  }
  return o;
}

// 10. Property suite.
Outcome ac10() {
  Outcome o;
  std::mt19937_64 rng(20241015);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (const StateSpec& s : grid_both()) {
    const WignerEvaluator eval(s);
    for (int i = 0; i < 32; ++i) {
      const PhasePoint p{u(rng), u(rng)};
      const double phi = u(rng);
      const PhasePoint q{p.x * std::cos(phi) - p.y * std::sin(phi),
                         p.x * std::sin(phi) + p.y * std::cos(phi)};
      o.observe(std::fabs(eval.value(p) - eval.value(q)), 1e-12, tag(s) + " rotation");
    }
    for (std::size_t k = 0; k < 40; ++k) {
      for (std::size_t l = 0; l < 40; l += 3) {
        if (k != l) o.require(matrix_element(s, k, l) == 0.0, tag(s) + " off-diagonal");
      }
    }
  }
  for (const StateSpec& s : standard_grid(Variant::Added)) {
    for (int k = 0; k < s.m; ++k) {
      o.require(pnd_value(s, static_cast<std::size_t>(k)) == 0.0, tag(s) + " head");
    }
    if (s.m == 0) continue;
    const double add = mean_photon_number(build_state(s));
    const double sub =
        mean_photon_number(build_state(StateSpec::make(s.params, s.m, Variant::Subtracted)));
    o.observe(rel(add - sub, static_cast<double>(s.m)), 1e-10, tag(s) + " mean shift");
  }
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const Criterion criteria[] = {
      {"reference PND table (24 printed values, 5e-7 abs)", ac1},
      {"critical gain / critical nbar (1e-4)", ac2},
      {"added/subtracted shift identity (1e-13 rel)", ac3},
      {"purity identity (1e-12 rel) and thermal purity (1e-14)", ac4},
      {"operator-pipeline oracle vs closed-form PND (1e-11 rel)", ac5},
      {"Wigner closed form vs Laguerre-sum oracle (1e-9 abs)", ac6},
      {"negativity radius (1e-8) and subtracted positivity", ac7},
      {"section minima: negative, below 5e-1/5e-2/5e-3", ac8},
      {"normalization and purity consistency (1e-9)", ac9},
      {"property suite", ac10},
  };

  bool all = true;
  for (int i = 0; i < 10; ++i) {
    if (only != 0 && only != i + 1) continue;
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.pass;
    std::printf("[%s] AC%d %s: worst residual %.3e%s%s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].title, o.worst, o.detail.empty() ? "" : " | ", o.detail.c_str());
  }
  return all ? 0 : 1;
}
