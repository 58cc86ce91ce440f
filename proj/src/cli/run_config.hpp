#pragma once

#include "sforge/closed_form.hpp"
#include "sforge/verification.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sforge::cli {

/// Everything a subcommand may read. Built from defaults, then an optional
/// JSON config file, then command-line flags (flags win).
struct RunConfig {
  WaveParams<double> wave;

  XiGrid xi_grid{-15.0, 15.0, 601};
  std::optional<double> xi0;
  double y = 0;  // fixed y of the 2-D slice

  bool surface = false;
  std::optional<double> x_min, x_max, y_min, y_max;
  std::optional<std::size_t> x_steps, y_steps;
  double t_min = 0, t_max = 2;
  std::size_t t_steps = 5;

  std::string out;      // explicit output file, "-" for stdout
  std::string out_dir;  // directory for generated files

  unsigned seeds = 64;
  std::uint64_t rng_seed = 0;
  std::optional<unsigned> degree;
  std::string ode = "ode2";

  bool pde = false;
  std::vector<std::pair<std::string, double>> corrupt;
};

/// Keys accepted in a JSON config file and as flags (`--key`).
enum class KeyType { Real, Count, Seed, Text, SetName };

struct KeySpec {
  const char* key;
  KeyType type;
  const char* help;
};

const std::vector<KeySpec>& config_keys();

/// Applies one JSON object of settings. Throws Error(InvalidInput) on unknown
/// keys or wrong types.
void apply_json(RunConfig& cfg, const nlohmann::json& settings);

/// Reads a JSON config file into `cfg`.
void load_config_file(RunConfig& cfg, const std::string& path);

/// Directory for generated files: --out-dir, else $SOLITON_FORGE_OUT_DIR, else ".".
std::string output_directory(const RunConfig& cfg);

}  // namespace sforge::cli
