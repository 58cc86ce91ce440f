#include "cli/run_config.hpp"

#include <cstdlib>
#include <fstream>

namespace sforge::cli {

const std::vector<KeySpec>& config_keys() {
  static const std::vector<KeySpec> keys = {
      {"A", KeyType::Real, "auxiliary ODE constant A"},
      {"B", KeyType::Real, "auxiliary ODE constant B"},
      {"C", KeyType::Real, "auxiliary ODE constant C"},
      {"C1", KeyType::Real, "integration constant C1"},
      {"C2", KeyType::Real, "integration constant C2"},
      {"n", KeyType::Real, "x wave number n"},
      {"m", KeyType::Real, "y wave number m"},
      {"alpha", KeyType::Real, "nonlinearity alpha"},
      {"t", KeyType::Real, "snapshot time t"},
      {"set", KeyType::SetName, "coefficient set: 1 or 2 (SET1/SET2)"},
      {"xi_min", KeyType::Real, "xi grid minimum"},
      {"xi_max", KeyType::Real, "xi grid maximum"},
      {"xi_steps", KeyType::Count, "xi grid points"},
      {"xi0", KeyType::Real, "base point where w = 0 (default: grid minimum)"},
      {"y", KeyType::Real, "fixed y for the 2-D slice"},
      {"x_min", KeyType::Real, "surface / PDE grid x minimum"},
      {"x_max", KeyType::Real, "surface / PDE grid x maximum"},
      {"x_steps", KeyType::Count, "surface / PDE grid x points"},
      {"y_min", KeyType::Real, "surface / PDE grid y minimum"},
      {"y_max", KeyType::Real, "surface / PDE grid y maximum"},
      {"y_steps", KeyType::Count, "surface / PDE grid y points"},
      {"t_min", KeyType::Real, "PDE grid t minimum"},
      {"t_max", KeyType::Real, "PDE grid t maximum"},
      {"t_steps", KeyType::Count, "PDE grid t points"},
      {"seeds", KeyType::Count, "solver starting points"},
      {"rng_seed", KeyType::Seed, "solver PRNG seed"},
      {"degree", KeyType::Count, "ansatz degree (default: balance number)"},
      {"ode", KeyType::Text, "reduced ODE: ode2 or ode3"},
      {"out", KeyType::Text, "output file ('-' for stdout)"},
      {"out_dir", KeyType::Text, "output directory"},
  };
  return keys;
}

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw Error(ErrorCode::InvalidInput, "config key '" + key + "': " + why);
}

double as_real(const std::string& key, const nlohmann::json& v) {
  if (!v.is_number()) bad(key, "expected a number");
  return v.get<double>();
}

std::uint64_t as_unsigned(const std::string& key, const nlohmann::json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  bad(key, "expected a non-negative integer");
}

std::uint64_t as_steps(const std::string& key, const nlohmann::json& v) {
  const auto n = as_unsigned(key, v);
  if (n < 2) bad(key, "grids need at least 2 points");
  return n;
}

SetTag as_set(const std::string& key, const nlohmann::json& v) {
  std::string s;
  if (v.is_number_integer()) s = std::to_string(v.get<std::int64_t>());
  else if (v.is_string()) s = v.get<std::string>();
  else bad(key, "expected 1, 2, SET1 or SET2");
  if (s == "1" || s == "SET1") return SetTag::Set1;
  if (s == "2" || s == "SET2") return SetTag::Set2;
  bad(key, "expected 1, 2, SET1 or SET2");
}

}  // namespace

void apply_json(RunConfig& cfg, const nlohmann::json& settings) {
  if (!settings.is_object()) throw Error(ErrorCode::InvalidInput, "config must be a JSON object");
  for (const auto& [key, v] : settings.items()) {
    auto& w = cfg.wave;
    if (key == "A") w.A = as_real(key, v);
    else if (key == "B") w.B = as_real(key, v);
    else if (key == "C") w.C = as_real(key, v);
    else if (key == "C1") w.C1 = as_real(key, v);
    else if (key == "C2") w.C2 = as_real(key, v);
    else if (key == "n") w.n = as_real(key, v);
    else if (key == "m") w.m = as_real(key, v);
    else if (key == "alpha") w.alpha = as_real(key, v);
    else if (key == "t") w.t = as_real(key, v);
    else if (key == "set") w.set = as_set(key, v);
    else if (key == "xi_min") cfg.xi_grid.min = as_real(key, v);
    else if (key == "xi_max") cfg.xi_grid.max = as_real(key, v);
    else if (key == "xi_steps") cfg.xi_grid.steps = as_steps(key, v);
    else if (key == "xi0") cfg.xi0 = as_real(key, v);
    else if (key == "y") cfg.y = as_real(key, v);
    else if (key == "x_min") cfg.x_min = as_real(key, v);
    else if (key == "x_max") cfg.x_max = as_real(key, v);
    else if (key == "x_steps") cfg.x_steps = as_steps(key, v);
    else if (key == "y_min") cfg.y_min = as_real(key, v);
    else if (key == "y_max") cfg.y_max = as_real(key, v);
    else if (key == "y_steps") cfg.y_steps = as_steps(key, v);
    else if (key == "t_min") cfg.t_min = as_real(key, v);
    else if (key == "t_max") cfg.t_max = as_real(key, v);
    else if (key == "t_steps") cfg.t_steps = as_steps(key, v);
    else if (key == "seeds") cfg.seeds = static_cast<unsigned>(as_unsigned(key, v));
    else if (key == "rng_seed") cfg.rng_seed = as_unsigned(key, v);
    else if (key == "degree") cfg.degree = static_cast<unsigned>(as_unsigned(key, v));
    else if (key == "ode") {
      if (!v.is_string()) bad(key, "expected a string");
      cfg.ode = v.get<std::string>();
    } else if (key == "out") {
      if (!v.is_string()) bad(key, "expected a string");
      cfg.out = v.get<std::string>();
    } else if (key == "out_dir") {
      if (!v.is_string()) bad(key, "expected a string");
      cfg.out_dir = v.get<std::string>();
    } else {
      bad(key, "unknown key");
    }
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, "config file '" + path + "' is not valid JSON: " + e.what());
  }
  apply_json(cfg, j);
}

std::string output_directory(const RunConfig& cfg) {
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("SOLITON_FORGE_OUT_DIR"); env && *env) return env;
  return ".";
}

}  // namespace sforge::cli
