#pragma once

#include "cli/output.hpp"
#include "cli/run_config.hpp"

#include <array>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sforge::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kValidation = 2;
inline constexpr int kVerification = 3;
inline constexpr int kSolver = 4;
}  // namespace exit_code

struct FigurePreset {
  std::string_view name;
  WaveParams<double> wave;
  double quoted_p;  // reference p the preset is checked against
  std::string_view morphology;
};

/// fig1..fig4.
const std::array<FigurePreset, 4>& figure_presets();
const FigurePreset& figure_preset(std::string_view name);

/// Entry point behind the `soliton-forge` binary. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Individual commands on an already-merged configuration.
int cmd_params(const RunConfig& cfg, std::ostream& out);
int cmd_collect(const RunConfig& cfg, std::ostream& out);
int cmd_solve(const RunConfig& cfg, std::ostream& out);
int cmd_eval(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_figure(const RunConfig& cfg, std::string_view name, std::ostream& out);

/// Rows of the 2-D slice / surface, exposed for tests.
std::vector<SliceRow> eval_slice(const RunConfig& cfg);
std::vector<SurfaceRow> eval_surface(const RunConfig& cfg);

}  // namespace sforge::cli
