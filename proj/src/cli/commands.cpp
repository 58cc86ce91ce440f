#include "cli/commands.hpp"

#include "sforge/solver.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace sforge::cli {

namespace {

constexpr double kPresetTolerance = 1e-5;

WaveParams<double> preset_wave(double C, SetTag set, double C1, double C2) {
  WaveParams<double> w;
  w.A = 0;
  w.B = 1;
  w.C = C;
  w.C1 = C1;
  w.C2 = C2;
  w.n = 1;
  w.m = 1;
  w.alpha = 1;
  w.t = 1;
  w.set = set;
  return w;
}

std::vector<double> axis(std::optional<double> lo, std::optional<double> hi, std::optional<std::size_t> steps,
                         double lo_default, double hi_default, std::size_t steps_default) {
  return XiGrid{lo.value_or(lo_default), hi.value_or(hi_default), steps.value_or(steps_default)}.points();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write '" + path.string() + "'");
  f << content;
}

nlohmann::json wave_json(const WaveConfigd& w) {
  const auto& q = w.params;
  return {{"A", q.A},         {"B", q.B},         {"C", q.C},          {"C1", q.C1},
          {"C2", q.C2},       {"n", q.n},         {"m", q.m},          {"alpha", q.alpha},
          {"t", q.t},         {"set", std::string(to_string(q.set))},
          {"case", std::string(to_string(w.kind().wave_case))},
          {"Lambda", w.lambda}, {"eta", w.coeffs.eta}, {"p", w.p},
          {"a", {w.coeffs.a0, w.coeffs.a1, w.coeffs.a2}}};
}

/// --corrupt a_k=delta shifts a_k by delta * max|a|; eta=delta shifts eta by
/// delta * max(|eta|, 1).
void apply_corruption(WaveConfigd& w, const std::vector<std::pair<std::string, double>>& corrupt) {
  auto& c = w.coeffs;
  const double scale = std::max({std::fabs(c.a0), std::fabs(c.a1), std::fabs(c.a2)});
  for (const auto& [key, delta] : corrupt) {
    if (key == "a0") c.a0 += delta * scale;
    else if (key == "a1") c.a1 += delta * scale;
    else if (key == "a2") c.a2 += delta * scale;
    else if (key == "eta") c.eta += delta * std::max(std::fabs(c.eta), 1.0);
    else throw Error(ErrorCode::InvalidInput, "--corrupt key must be a0, a1, a2 or eta");
  }
}

std::pair<std::string, double> parse_corruption(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw Error(ErrorCode::InvalidInput, "--corrupt expects key=value");
  try {
    std::size_t used = 0;
    const std::string value = spec.substr(eq + 1);
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return {spec.substr(0, eq), v};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidInput, "--corrupt value is not a number: '" + spec + "'");
  }
}

nlohmann::json flag_to_json(const KeySpec& spec, const std::string& text) {
  const std::string key = spec.key;
  auto fail = [&] { throw Error(ErrorCode::InvalidInput, "--" + key + ": bad value '" + text + "'"); };
  try {
    std::size_t used = 0;
    switch (spec.type) {
      case KeyType::Real: {
        const double v = std::stod(text, &used);
        if (used != text.size()) fail();
        return v;
      }
      case KeyType::Count:
      case KeyType::Seed: {
        if (text.empty() || text.front() == '-') fail();
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size()) fail();
        return static_cast<std::uint64_t>(v);
      }
      case KeyType::Text:
      case KeyType::SetName:
        return text;
    }
  } catch (const std::logic_error&) {
    fail();
  }
  return nullptr;
}

void write_error(std::ostream& err, std::string_view code, const std::string& message) {
  err << nlohmann::json{{"error", std::string(code)}, {"message", message}}.dump() << '\n';
}

std::vector<double> slice_xis(const RunConfig& cfg) { return cfg.xi_grid.points(); }

}  // namespace

const std::array<FigurePreset, 4>& figure_presets() {
  static const std::array<FigurePreset, 4> presets = {{
      {"fig1", preset_wave(0.1, SetTag::Set1, 1, 1), -0.8, "kink"},
      {"fig2", preset_wave(1.1, SetTag::Set1, 1, 1), -2.13333, "singular periodic"},
      {"fig3", preset_wave(0.15, SetTag::Set2, 1, 1), -1.13333, "one soliton"},
      {"fig4", preset_wave(1.1, SetTag::Set2, 0, 1), 0.133333, "singular periodic"},
  }};
  return presets;
}

const FigurePreset& figure_preset(std::string_view name) {
  for (const auto& p : figure_presets()) {
    if (p.name == name) return p;
  }
  throw Error(ErrorCode::InvalidInput, "unknown figure '" + std::string(name) + "' (fig1..fig4)");
}

int cmd_params(const RunConfig& cfg, std::ostream& out) {
  const auto w = make_wave_config(cfg.wave);
  const auto& q = w.params;
  const auto sets = closed_form_parameter_sets(q.B, q.C, q.n, q.m, q.alpha);
  nlohmann::json j{{"B", q.B}, {"C", q.C}, {"n", q.n}, {"m", q.m}, {"alpha", q.alpha}, {"Lambda", w.lambda}};
  j["sets"] = nlohmann::json::array();
  for (const auto& s : sets) {
    auto r = to_json(s);
    r["p"] = p_from_eta(s.eta, q.n, q.m);
    j["sets"].push_back(r);
  }
  out << j.dump(2) << '\n';
  return exit_code::kOk;
}

int cmd_collect(const RunConfig& cfg, std::ostream& out) {
  ReducedODE ode = bkp_reduced_ode();
  if (cfg.ode == "ode3") ode = bkp_third_order_ode();
  else if (cfg.ode != "ode2") throw Error(ErrorCode::InvalidInput, "--ode must be ode2 or ode3");
  const unsigned degree = cfg.degree.value_or(balance_number(ode));
  out << collect_system(ode, build_ansatz(degree)).to_string();
  return exit_code::kOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const auto& q = cfg.wave;
  if (q.alpha == 0.0) throw Error(ErrorCode::AlphaZero, "alpha must be nonzero");
  if (cfg.seeds == 0) throw Error(ErrorCode::InvalidInput, "--seeds must be >= 1");
  const std::map<Symbol, double> fixed = {
      {Symbol::B(), q.B}, {Symbol::C(), q.C}, {Symbol::n(), q.n}, {Symbol::m(), q.m}, {Symbol::alpha(), q.alpha}};
  const ReducedODE ode = bkp_reduced_ode();
  const unsigned degree = cfg.degree.value_or(balance_number(ode));
  const auto system = collect_system(ode, build_ansatz(degree));
  SolveOptions opts;
  opts.seeds = cfg.seeds;
  opts.rng_seed = cfg.rng_seed;
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : solve_system(system, fixed, opts)) j.push_back(to_json(s));
  out << j.dump(2) << '\n';
  return exit_code::kOk;
}

std::vector<SliceRow> eval_slice(const RunConfig& cfg) {
  const auto w = make_wave_config(cfg.wave);
  if (w.params.n == 0.0) throw Error(ErrorCode::InvalidInput, "the 2-D slice needs n != 0");
  const auto xis = slice_xis(cfg);
  const double radius =
      xis.size() > 1 ? std::fabs(cfg.xi_grid.max - cfg.xi_grid.min) / static_cast<double>(xis.size() - 1) / 2 : 0.0;
  const double xi0 = cfg.xi0.value_or(std::min(cfg.xi_grid.min, cfg.xi_grid.max));
  const auto samples = sample_profile<double>(w.kind(), w, xis, xi0, radius);
  std::vector<SliceRow> rows;
  rows.reserve(samples.size());
  const auto& q = w.params;
  for (const auto& s : samples) {
    const double x = (s.xi - q.m * cfg.y + w.p * q.t) / q.n;
    rows.push_back({s.xi, x, cfg.y, q.t, s.U, s.w, s.singular});
  }
  return rows;
}

std::vector<SurfaceRow> eval_surface(const RunConfig& cfg) {
  const auto w = make_wave_config(cfg.wave);
  const auto xs = axis(cfg.x_min, cfg.x_max, cfg.x_steps, -10, 10, 101);
  const auto ys = axis(cfg.y_min, cfg.y_max, cfg.y_steps, -10, 10, 101);
  const auto& q = w.params;
  std::vector<double> xis;
  xis.reserve(xs.size() * ys.size());
  for (double y : ys) {
    for (double x : xs) xis.push_back(xi(w, x, y));
  }
  const double dx = xs.size() > 1 ? std::fabs(xs[1] - xs[0]) : 0.0;
  const double dy = ys.size() > 1 ? std::fabs(ys[1] - ys[0]) : 0.0;
  const double radius = std::max(std::fabs(q.n) * dx, std::fabs(q.m) * dy) / 2;
  const double xi0 = cfg.xi0.value_or(*std::min_element(xis.begin(), xis.end()));
  const auto samples = sample_profile<double>(w.kind(), w, xis, xi0, radius);
  std::vector<SurfaceRow> rows;
  rows.reserve(samples.size());
  std::size_t k = 0;
  for (double y : ys) {
    for (double x : xs) {
      const auto& s = samples[k++];
      rows.push_back({x, y, q.t, s.U, s.w, s.singular});
    }
  }
  return rows;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  std::ostringstream csv;
  std::size_t count = 0;
  if (cfg.surface) {
    const auto rows = eval_surface(cfg);
    write_surface_csv(csv, rows);
    count = rows.size();
  } else {
    const auto rows = eval_slice(cfg);
    write_slice_csv(csv, rows);
    count = rows.size();
  }
  if (cfg.out == "-") {
    out << csv.str();
    return exit_code::kOk;
  }
  const std::filesystem::path path =
      cfg.out.empty() ? std::filesystem::path(output_directory(cfg)) / (cfg.surface ? "eval_surface.csv" : "eval.csv")
                      : std::filesystem::path(cfg.out);
  write_file(path, csv.str());
  out << nlohmann::json{{"file", path.string()}, {"rows", count}}.dump() << '\n';
  return exit_code::kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  auto w = make_wave_config(cfg.wave);
  if (cfg.xi_grid.steps < 2) throw Error(ErrorCode::InvalidInput, "verification grid needs at least 2 points");
  for (const auto& [key, delta] : cfg.corrupt) {
    (void)delta;
    if (key != "a0" && key != "a1" && key != "a2" && key != "eta") {
      throw Error(ErrorCode::InvalidInput, "--corrupt key must be a0, a1, a2 or eta");
    }
  }
  apply_corruption(w, cfg.corrupt);
  const auto kind = w.kind();

  std::vector<ResidualReport> reports;
  reports.push_back(residual_riccati(w, cfg.xi_grid));
  reports.push_back(residual_g_ode(w, cfg.xi_grid));
  const auto ode2 = residual_ode2(kind, w, cfg.xi_grid);
  reports.push_back(ode2.exact);
  reports.push_back(ode2.finite_difference);
  reports.push_back(residual_ode3(kind, w, cfg.xi_grid));
  if (cfg.pde) {
    SpaceTimeGrid g;
    g.x_min = cfg.x_min.value_or(-5);
    g.x_max = cfg.x_max.value_or(5);
    g.x_steps = cfg.x_steps.value_or(41);
    g.y_min = cfg.y_min.value_or(-5);
    g.y_max = cfg.y_max.value_or(5);
    g.y_steps = cfg.y_steps.value_or(41);
    g.t_min = cfg.t_min;
    g.t_max = cfg.t_max;
    g.t_steps = cfg.t_steps;
    reports.push_back(residual_pde(kind, w, g));
  }

  bool pass = true;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass();
    list.push_back(to_json(r));
  }
  out << nlohmann::json{{"config", wave_json(w)}, {"reports", list}, {"pass", pass}}.dump(2) << '\n';
  return pass ? exit_code::kOk : exit_code::kVerification;
}

int cmd_figure(const RunConfig& cfg, std::string_view name, std::ostream& out) {
  const auto& preset = figure_preset(name);
  RunConfig fig;
  fig.wave = preset.wave;
  fig.xi_grid = XiGrid{-15, 15, 601};
  fig.x_min = -10;
  fig.x_max = 10;
  fig.x_steps = 81;
  fig.y_min = -10;
  fig.y_max = 10;
  fig.y_steps = 81;
  const auto w = make_wave_config(fig.wave);
  const bool p_matches = std::fabs(w.p - preset.quoted_p) < kPresetTolerance;

  const std::filesystem::path dir = output_directory(cfg);
  const std::string base(name);
  std::ostringstream surface, slice;
  write_surface_csv(surface, eval_surface(fig));
  write_slice_csv(slice, eval_slice(fig));
  const std::string title = base + ": " + std::string(preset.morphology) + ", " + std::string(to_string(w.params.set)) +
                            " " + std::string(to_string(w.kind().wave_case)) + ", p = " + format_real(w.p);
  const auto script = gnuplot_script(base, title, base + "_surface.csv", base + "_slice.csv");
  write_file(dir / (base + "_surface.csv"), surface.str());
  write_file(dir / (base + "_slice.csv"), slice.str());
  write_file(dir / (base + ".gp"), script);

  out << nlohmann::json{{"figure", base},
                        {"config", wave_json(w)},
                        {"quoted_p", preset.quoted_p},
                        {"p_matches", p_matches},
                        {"files",
                         {(dir / (base + "_surface.csv")).string(), (dir / (base + "_slice.csv")).string(),
                          (dir / (base + ".gp")).string()}}}
             .dump(2)
      << '\n';
  return p_matches ? exit_code::kOk : exit_code::kVerification;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"soliton-forge: traveling-wave solutions of the reduced (2+1)-dimensional BKP equation"};
  app.name("soliton-forge");
  app.require_subcommand(1, 1);

  std::string config_path;
  bool surface = false;
  bool pde = false;
  std::vector<std::string> corrupt;
  std::string figure_name;
  std::map<std::string, std::string> values;
  std::vector<std::pair<const KeySpec*, CLI::Option*>> bound;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; flags override it");
    for (const auto& spec : config_keys()) {
      std::string names = std::string("--") + spec.key;
      std::string dashed = spec.key;
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      if (dashed != spec.key) names += ",--" + dashed;
      bound.emplace_back(&spec, sub->add_option(names, values[spec.key], spec.help));
    }
  };

  auto* params = app.add_subcommand("params", "closed-form coefficient sets, Lambda, eta and p");
  auto* collect = app.add_subcommand("collect", "print the collected phi-power coefficient system");
  auto* solve = app.add_subcommand("solve", "solve the coefficient system numerically (multi-start)");
  auto* eval = app.add_subcommand("eval", "sample U and w on a grid and write CSV");
  auto* verify = app.add_subcommand("verify", "residual checks of the closed-form solution");
  auto* figure = app.add_subcommand("figure", "write data and a gnuplot script for a figure preset");
  for (auto* sub : {params, collect, solve, eval, verify, figure}) add_common(sub);
  eval->add_flag("--surface", surface, "sample over an (x, y) grid instead of a xi slice");
  verify->add_flag("--pde", pde, "also check the (2+1)-dimensional PDE on an (x, y, t) grid");
  verify->add_option("--corrupt", corrupt, "debug: perturb a coefficient, e.g. a0=1e-3 (relative to max|a|)");
  figure->add_option("name", figure_name, "fig1, fig2, fig3 or fig4")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name());
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    write_error(err, "UsageError", e.what());
    return exit_code::kValidation;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) load_config_file(cfg, config_path);
    nlohmann::json overrides = nlohmann::json::object();
    for (const auto& [spec, opt] : bound) {
      if (opt->count() > 0) overrides[spec->key] = flag_to_json(*spec, values[spec->key]);
    }
    apply_json(cfg, overrides);
    cfg.surface = surface;
    cfg.pde = pde;
    for (const auto& c : corrupt) cfg.corrupt.push_back(parse_corruption(c));

    if (params->parsed()) return cmd_params(cfg, out);
    if (collect->parsed()) return cmd_collect(cfg, out);
    if (solve->parsed()) return cmd_solve(cfg, out);
    if (eval->parsed()) return cmd_eval(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (figure->parsed()) return cmd_figure(cfg, figure_name, out);
  } catch (const Error& e) {
    write_error(err, to_string(e.code()), e.what());
    return e.code() == ErrorCode::NoSolutionFound ? exit_code::kSolver : exit_code::kValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    write_error(err, "IOError", e.what());
    return exit_code::kValidation;
  }
  return exit_code::kValidation;
}

}  // namespace sforge::cli
