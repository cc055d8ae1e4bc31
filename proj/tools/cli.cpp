#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "thermamp/error.hpp"
#include "thermamp/fock.hpp"
#include "thermamp/io.hpp"
#include "thermamp/params.hpp"
#include "thermamp/purity.hpp"
#include "thermamp/verify.hpp"
#include "thermamp/wigner.hpp"

namespace thermamp::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Parameter sets behind the figure presets.
constexpr double kFigureNbar = 1.5;
constexpr double kFigureGains[] = {1.05, 1.1, 1.2};
constexpr int kFigurePhotons[] = {0, 1, 3, 5};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Where the data goes: --out PATH or the caller's stream.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& fallback) : stream_(&fallback) {
    if (cfg.out) {
      file_.open(*cfg.out, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file '" + *cfg.out + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<double> linspace(double lo, double hi, long long n) {
  if (n < 1) throw UsageError("point counts must be >= 1");
  if (n == 1) return {lo};
  std::vector<double> v(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] =
        (i == n - 1) ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

Json base_meta(const RunConfig& cfg) {
  Json params = Json::object();
  if (cfg.nbar) params["nbar"] = *cfg.nbar;
  if (cfg.gain) params["gain"] = *cfg.gain;
  if (!cfg.m_values.empty()) params["m"] = cfg.m_values;
  params["variant"] = cfg.variant;
  params["tail_eps"] = cfg.tail_eps;
  if (cfg.preset) params["preset"] = *cfg.preset;
  return Json{{"tool", "thermamp"},
              {"version", std::string(kVersion)},
              {"command", cfg.subcommand},
              {"parameters", params}};
}

int single_m(const RunConfig& cfg) {
  if (cfg.m_values.size() > 1) throw UsageError("this command takes a single --m value");
  return cfg.m_values.empty() ? 0 : cfg.m_values.front();
}

StateSpec spec_from(const RunConfig& cfg) {
  if (!cfg.nbar) throw UsageError("--nbar is required");
  return StateSpec::make(ModelParams::make(*cfg.nbar, cfg.gain.value_or(1.0)), single_m(cfg),
                         parse_variant(cfg.variant));
}

Json spec_json(const StateSpec& s) {
  return Json{{"nbar", s.params.nbar},
              {"gain", s.params.gain},
              {"m", s.m},
              {"variant", std::string(to_string(s.variant))},
              {"nbar_amp", amplified_nbar(s)}};
}

// ---------------------------------------------------------------- pnd

int cmd_pnd(const RunConfig& cfg, std::ostream& out) {
  Json meta = base_meta(cfg);
  Table table;

  if (cfg.table1) {
    const auto columns = table1_reference();
    table.columns = {"k"};
    for (const auto& col : columns) table.columns.push_back(col.label);
    const long long kmax = cfg.kmax.value_or(5);
    for (long long k = 0; k <= kmax; ++k) {
      std::vector<Cell> row{k};
      for (const auto& col : columns) row.emplace_back(pnd_value(col.spec, static_cast<std::size_t>(k)));
      table.add_row(std::move(row));
    }
    meta["parameters"] = Json{{"nbar", kFigureNbar}, {"gain", 1.2}, {"m", 3}};
  } else if (cfg.preset) {
    Variant variant;
    if (*cfg.preset == "fig3") {
      variant = Variant::Added;
    } else if (*cfg.preset == "fig4") {
      variant = Variant::Subtracted;
    } else {
      throw UsageError("pnd supports presets fig3 and fig4");
    }
    const long long kmax = cfg.kmax.value_or(50);
    table.columns = {"gain", "m", "k", "rho"};
    for (double gain : kFigureGains) {
      for (int m : kFigurePhotons) {
        const StateSpec s = StateSpec::make(ModelParams{kFigureNbar, gain}, m, variant);
        for (long long k = 0; k <= kmax; ++k) {
          table.add_row({gain, static_cast<long long>(m), k, pnd_value(s, static_cast<std::size_t>(k))});
        }
      }
    }
  } else {
    const StateSpec s = spec_from(cfg);
    meta["parameters"]["nbar_amp"] = amplified_nbar(s);
    table.columns = {"k", "rho"};
    if (cfg.kmax) {
      if (*cfg.kmax < 0) throw UsageError("--kmax must be >= 0");
      for (long long k = 0; k <= *cfg.kmax; ++k) {
        table.add_row({k, pnd_value(s, static_cast<std::size_t>(k))});
      }
    } else {
      const DiagonalFockState st = build_state(s, cfg.tail_eps);
      meta["cutoff"] = st.cutoff;
      meta["tail_mass"] = st.tail_mass;
      for (std::size_t k = 0; k <= st.cutoff; ++k) {
        table.add_row({static_cast<long long>(k), st.weights[k]});
      }
    }
  }
  Sink sink(cfg, out);
  write_table(sink.stream(), table, parse_format(cfg.format), meta);
  return kExitOk;
}

// ---------------------------------------------------------------- region

double region_value(const ModelParams& p, bool allow_formal) {
  if (classify_region(p) == RegionClass::Physical) return amplified_params(p).nbar_amp;
  return allow_formal ? amplified_params_formal(p).nbar_amp : kNaN;
}

void region_row(Table& t, const std::string& series, const ModelParams& p, bool allow_formal) {
  t.add_row({series, p.nbar, p.gain, std::string(to_string(classify_region(p))),
             region_value(p, allow_formal)});
}

// N versus gain at fixed nbar, with a divergence marker row at g_c.
void region_gain_curve(Table& t, const std::string& series, double nbar, double lo, double hi,
                       long long n, bool allow_formal, Json& markers) {
  const double gc = nbar > 0.0 ? critical_gain(nbar) : kInf;
  bool marked = false;
  for (double g : linspace(lo, hi, n)) {
    if (!marked && g > gc && gc >= lo) {
      t.add_row({series, nbar, gc, std::string("critical"), kInf});
      marked = true;
    }
    region_row(t, series, ModelParams::make(nbar, g), allow_formal);
  }
  if (nbar > 0.0) markers.push_back(Json{{"series", series}, {"nbar", nbar}, {"critical_gain", gc}});
}

// N versus nbar at fixed gain, with a divergence marker row at nbar_c.
void region_nbar_curve(Table& t, const std::string& series, double gain, double lo, double hi,
                       long long n, bool allow_formal, Json& markers) {
  const double nc = gain > 1.0 ? critical_nbar(gain) : kInf;
  bool marked = false;
  for (double nb : linspace(lo, hi, n)) {
    if (!marked && nb > nc && nc >= lo) {
      t.add_row({series, nc, gain, std::string("critical"), kInf});
      marked = true;
    }
    region_row(t, series, ModelParams::make(nb, gain), allow_formal);
  }
  if (gain > 1.0) markers.push_back(Json{{"series", series}, {"gain", gain}, {"critical_nbar", nc}});
}

int cmd_region(const RunConfig& cfg, std::ostream& out) {
  Json meta = base_meta(cfg);
  meta["parameters"]["allow_formal"] = cfg.allow_formal;
  Json markers = Json::array();
  Table t;
  t.columns = {"series", "nbar", "gain", "region", "nbar_amp"};

  const auto map = [&](const std::string& series, double n_lo, double n_hi, long long nn,
                       double g_lo, double g_hi, long long ng) {
    for (double g : linspace(g_lo, g_hi, ng)) {
      for (double nb : linspace(n_lo, n_hi, nn)) {
        region_row(t, series, ModelParams::make(nb, g), cfg.allow_formal);
      }
    }
  };

  if (cfg.preset) {
    if (*cfg.preset != "fig1") throw UsageError("region supports preset fig1");
    map("fig1b", 0.0, 5.0, 101, 1.0, 3.0, 101);
    for (double nb : {1.1, 1.5}) {
      region_gain_curve(t, "fig1c_nbar=" + format_double(nb), nb, 1.0, 1.6, 301, cfg.allow_formal,
                        markers);
    }
    for (double g : {1.06, 1.08}) {
      region_nbar_curve(t, "fig1d_gain=" + format_double(g), g, 0.0, 12.0, 301, cfg.allow_formal,
                        markers);
    }
  } else if (cfg.nbar && !cfg.gain) {
    region_gain_curve(t, "gain_curve", *cfg.nbar, cfg.ymin.value_or(1.0), cfg.ymax.value_or(2.0),
                      cfg.ny.value_or(201), cfg.allow_formal, markers);
  } else if (cfg.gain && !cfg.nbar) {
    region_nbar_curve(t, "nbar_curve", *cfg.gain, cfg.xmin.value_or(0.0), cfg.xmax.value_or(10.0),
                      cfg.nx.value_or(201), cfg.allow_formal, markers);
  } else if (cfg.gain && cfg.nbar) {
    region_row(t, "point", ModelParams::make(*cfg.nbar, *cfg.gain), cfg.allow_formal);
  } else {
    map("map", cfg.xmin.value_or(0.0), cfg.xmax.value_or(5.0), cfg.nx.value_or(101),
        cfg.ymin.value_or(1.0), cfg.ymax.value_or(3.0), cfg.ny.value_or(101));
  }
  meta["critical"] = markers;
  Sink sink(cfg, out);
  write_table(sink.stream(), t, parse_format(cfg.format), meta);
  return kExitOk;
}

// ---------------------------------------------------------------- purity

double purity_or_nan(const StateSpec& s) {
  try {
    return purity_analytic(s);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SubtractionFromVacuum) return kNaN;
    throw;
  }
}

int cmd_purity(const RunConfig& cfg, std::ostream& out) {
  Json meta = base_meta(cfg);
  std::vector<int> ms = cfg.m_values;
  std::vector<double> amps;
  if (cfg.preset) {
    if (*cfg.preset != "fig5") throw UsageError("purity supports preset fig5");
    ms.assign(std::begin(kFigurePhotons), std::end(kFigurePhotons));
    amps = linspace(0.0, 10.0, 201);
  } else if (cfg.nbar) {
    amps = {amplified_params(ModelParams::make(*cfg.nbar, cfg.gain.value_or(1.0))).nbar_amp};
  } else {
    amps = linspace(cfg.xmin.value_or(0.0), cfg.xmax.value_or(10.0), cfg.nx.value_or(101));
  }
  if (ms.empty()) ms.assign(std::begin(kFigurePhotons), std::end(kFigurePhotons));
  meta["parameters"]["m"] = ms;

  Table t;
  t.columns = {"nbar_amp", "m", "analytic_add", "analytic_sub", "numeric_add", "numeric_sub", "residual"};
  for (double amp : amps) {
    if (amp < 0.0) throw UsageError("the amplified mean photon number must be >= 0");
    for (int m : ms) {
      const StateSpec add = StateSpec::from_amplified(amp, m, Variant::Added);
      const double pa = purity_analytic(add);
      const double na = purity_numeric(build_state(add, cfg.tail_eps));
      double ps = kNaN;
      double ns = kNaN;
      if (amp > 0.0 || m == 0) {
        const StateSpec sub = StateSpec::from_amplified(amp, m, Variant::Subtracted);
        ps = purity_or_nan(sub);
        ns = purity_numeric(build_state(sub, cfg.tail_eps));
      }
      double residual = std::fabs(pa - na);
      if (std::isfinite(ps)) residual = std::max(residual, std::fabs(ps - ns));
      t.add_row({amp, static_cast<long long>(m), pa, ps, na, ns, residual});
    }
  }
  Sink sink(cfg, out);
  write_table(sink.stream(), t, parse_format(cfg.format), meta);
  return kExitOk;
}

// ---------------------------------------------------------------- wigner

Json wigner_summary(const StateSpec& s) {
  Json j = spec_json(s);
  const SectionMinimum sm = min_section(s);
  j["x_min"] = sm.x_min;
  j["w_min"] = sm.w_min;
  j["section_roots"] = section_roots(s);
  if (s.m == 1 && s.variant == Variant::Added) {
    j["negativity_radius"] = negativity_radius_m1(amplified_nbar(s));
  } else {
    j["negativity_radius"] = nullptr;
  }
  return j;
}

void emit_with_sidecar(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                       const Table& t, Json meta, const Json& summary) {
  const Format format = parse_format(cfg.format);
  if (format == Format::Json) {
    meta["summary"] = summary;
    Sink sink(cfg, out);
    write_table(sink.stream(), t, format, meta);
    return;
  }
  {
    Sink sink(cfg, out);
    write_table(sink.stream(), t, format, meta);
  }
  Json side = Json{{"meta", meta}, {"summary", summary}};
  std::optional<std::string> path = cfg.sidecar;
  if (!path && cfg.out) path = *cfg.out + ".json";
  if (path) {
    std::ofstream f(*path, std::ios::binary);
    if (!f) throw UsageError("cannot open sidecar file '" + *path + "'");
    f << side.dump(2) << '\n';
  } else {
    err << side.dump(2) << '\n';
  }
}

GridAxis axis_x(const RunConfig& cfg) {
  return GridAxis{cfg.xmin.value_or(-4.0), cfg.xmax.value_or(4.0),
                  static_cast<std::size_t>(std::max<long long>(0, cfg.nx.value_or(161)))};
}

GridAxis axis_y(const RunConfig& cfg) {
  return GridAxis{cfg.ymin.value_or(-4.0), cfg.ymax.value_or(4.0),
                  static_cast<std::size_t>(std::max<long long>(0, cfg.ny.value_or(161)))};
}

void section_rows(Table& t, const StateSpec& s, const GridAxis& ax, std::vector<Cell> prefix) {
  if (ax.count < 2) throw UsageError("--nx must be >= 2");
  const WignerEvaluator eval(s);
  std::vector<PhasePoint> pts(ax.count);
  for (std::size_t i = 0; i < ax.count; ++i) pts[i] = PhasePoint{ax.at(i), 0.0};
  std::vector<double> w(ax.count);
  eval.evaluate(pts, w);
  for (std::size_t i = 0; i < ax.count; ++i) {
    std::vector<Cell> row = prefix;
    row.emplace_back(pts[i].x);
    row.emplace_back(w[i]);
    t.add_row(std::move(row));
  }
}

void grid_rows(Table& t, const WignerGrid& g, const std::vector<Cell>& prefix) {
  for (std::size_t iy = 0; iy < g.y.count; ++iy) {
    for (std::size_t ix = 0; ix < g.x.count; ++ix) {
      std::vector<Cell> row = prefix;
      row.emplace_back(g.x.at(ix));
      row.emplace_back(g.y.at(iy));
      row.emplace_back(g.at(ix, iy));
      t.add_row(std::move(row));
    }
  }
}

int cmd_wigner(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Json meta = base_meta(cfg);
  const GridAxis ax = axis_x(cfg);
  const GridAxis ay = axis_y(cfg);
  meta["parameters"]["x_range"] = {ax.lo, ax.hi, ax.count};
  Table t;

  if (cfg.preset) {
    const std::string& preset = *cfg.preset;
    Json summary = Json::array();
    if (preset == "fig8") {
      t.columns = {"m", "gain", "x", "W"};
      for (int m : {1, 3, 5}) {
        for (double gain : kFigureGains) {
          const StateSpec s = StateSpec::make(ModelParams{kFigureNbar, gain}, m, Variant::Added);
          section_rows(t, s, ax, {static_cast<long long>(m), gain});
          summary.push_back(wigner_summary(s));
        }
      }
    } else if (preset == "fig6" || preset == "fig7") {
      const Variant variant = preset == "fig6" ? Variant::Added : Variant::Subtracted;
      meta["parameters"]["y_range"] = {ay.lo, ay.hi, ay.count};
      t.columns = {"gain", "m", "x", "y", "W"};
      for (double gain : kFigureGains) {
        for (int m : kFigurePhotons) {
          const StateSpec s = StateSpec::make(ModelParams{kFigureNbar, gain}, m, variant);
          const WignerGrid g = wigner_grid(s, ax, ay, cfg.threads);
          grid_rows(t, g, {gain, static_cast<long long>(m)});
          Json j = wigner_summary(s);
          j["grid_min"] = g.min_value();
          summary.push_back(std::move(j));
        }
      }
    } else {
      throw UsageError("wigner supports presets fig6, fig7 and fig8");
    }
    emit_with_sidecar(cfg, out, err, t, meta, summary);
    return kExitOk;
  }

  const StateSpec s = spec_from(cfg);
  Json summary = wigner_summary(s);
  if (cfg.section) {
    t.columns = {"x", "W"};
    section_rows(t, s, ax, {});
  } else {
    meta["parameters"]["y_range"] = {ay.lo, ay.hi, ay.count};
    const WignerGrid g = wigner_grid(s, ax, ay, cfg.threads);
    t.columns = {"x", "y", "W"};
    grid_rows(t, g, {});
    summary["grid_min"] = g.min_value();
    summary["grid_integral"] = g.integral();
  }
  emit_with_sidecar(cfg, out, err, t, meta, summary);
  return kExitOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  VerifyOptions opts;
  opts.fuzz = cfg.fuzz;
  opts.tail_eps = cfg.tail_eps;
  const VerificationReport report = run_verification(opts);

  Sink sink(cfg, out);
  if (cfg.json || cfg.format == "json") {
    Json doc = report.to_json();
    doc["meta"]["parameters"] = Json{{"fuzz", cfg.fuzz}, {"tail_eps", cfg.tail_eps}};
    sink.stream() << doc.dump(2) << '\n';
  } else {
    Table t;
    t.columns = {"check_name", "max_residual", "tolerance", "pass", "parameters"};
    for (const auto& c : report.checks) {
      t.add_row({c.name, c.max_residual, c.tolerance, std::string(c.pass ? "true" : "false"),
                 c.parameters.dump()});
    }
    write_csv(sink.stream(), t);
  }
  std::size_t passed = 0;
  for (const auto& c : report.checks) passed += c.pass ? 1 : 0;
  err << "verify: " << passed << "/" << report.checks.size() << " checks passed\n";
  return report.all_passed() ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------- parsing

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", cfg.out, "Write output to PATH instead of stdout");
  sub->add_option("--tail-eps", cfg.tail_eps, "Truncation tail bound for built states");
}

void add_state(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--nbar", cfg.nbar, "Input thermal mean photon number");
  sub->add_option("--gain", cfg.gain, "Amplification gain (default 1)");
  sub->add_option("--m", cfg.m_values, "Photons added or subtracted")->delimiter(',');
  sub->add_option("--variant", cfg.variant, "add | sub")->check(CLI::IsMember({"add", "sub"}));
}

void add_axes(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--xmin", cfg.xmin);
  sub->add_option("--xmax", cfg.xmax);
  sub->add_option("--ymin", cfg.ymin);
  sub->add_option("--ymax", cfg.ymax);
  sub->add_option("--nx", cfg.nx);
  sub->add_option("--ny", cfg.ny);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Amplified thermal states with photon addition/subtraction: distributions, "
               "purities and Wigner functions",
               "thermamp"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* pnd = app.add_subcommand("pnd", "Photon-number distribution rho_kk");
  add_common(pnd, cfg);
  add_state(pnd, cfg);
  pnd->add_option("--kmax", cfg.kmax, "Emit k = 0..KMAX (default: up to the tail cutoff)");
  pnd->add_flag("--table1", cfg.table1, "Reference table at nbar=1.5, g=1.2, m=3");
  pnd->add_option("--preset", cfg.preset, "fig3 | fig4");

  auto* region = app.add_subcommand("region", "Physicality region and N versus g / nbar curves");
  add_common(region, cfg);
  region->add_option("--nbar", cfg.nbar, "Fixed nbar: N versus gain over [ymin, ymax]");
  region->add_option("--gain", cfg.gain, "Fixed gain: N versus nbar over [xmin, xmax]");
  add_axes(region, cfg);
  region->add_flag("--allow-formal", cfg.allow_formal,
                   "Report the algebraic N outside the physical region");
  region->add_option("--preset", cfg.preset, "fig1");

  auto* purity = app.add_subcommand("purity", "Purity versus N for each m");
  add_common(purity, cfg);
  purity->add_option("--nbar", cfg.nbar, "Single point from (nbar, gain)");
  purity->add_option("--gain", cfg.gain);
  purity->add_option("--m", cfg.m_values, "Photon counts (comma separated)")->delimiter(',');
  add_axes(purity, cfg);
  purity->add_option("--preset", cfg.preset, "fig5");

  auto* wigner = app.add_subcommand("wigner", "Wigner function grid or y = 0 section");
  add_common(wigner, cfg);
  add_state(wigner, cfg);
  add_axes(wigner, cfg);
  wigner->add_flag("--section", cfg.section, "Emit W(x, 0) over [xmin, xmax] only");
  wigner->add_option("--sidecar", cfg.sidecar, "Path of the JSON summary for CSV output");
  wigner->add_option("--threads", cfg.threads, "Grid worker threads (0 = all cores)");
  wigner->add_option("--preset", cfg.preset, "fig6 | fig7 | fig8");

  auto* verify = app.add_subcommand("verify", "Run the cross-check suite");
  add_common(verify, cfg);
  verify->add_option("--fuzz", cfg.fuzz, "Relative perturbation of N on the closed-form side");
  verify->add_flag("--json", cfg.json, "JSON report (default)");

  std::vector<const char*> argv{"thermamp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  // verify reports JSON unless CSV is asked for explicitly.
  if (cfg.subcommand == "verify" && verify->count("--format") == 0) cfg.json = true;

  try {
    if (cfg.subcommand == "pnd") return cmd_pnd(cfg, out);
    if (cfg.subcommand == "region") return cmd_region(cfg, out);
    if (cfg.subcommand == "purity") return cmd_purity(cfg, out);
    if (cfg.subcommand == "wigner") return cmd_wigner(cfg, out, err);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out, err);
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace thermamp::cli
