#pragma once

#include "sforge/expansion.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace sforge {

struct SolveOptions {
  unsigned seeds = 64;
  std::uint64_t rng_seed = 0;
  /// Starting points are uniform in [-seed_box, seed_box] per unknown, in
  /// coordinates equilibrated so that coefficient magnitudes are balanced.
  double seed_box = 10.0;
  unsigned max_iterations = 400;
  double dedup_tolerance = 1e-6;
  double accept_residual = 1e-10;
  double degenerate_tolerance = 1e-9;
};

/// Multi-start damped Gauss-Newton (Levenberg-Marquardt) on the collected
/// system. `fixed` must bind every symbol that is not an unknown. Returns the
/// distinct non-degenerate roots, sorted, tagged NUMERIC. Throws
/// NoSolutionFound when nothing survives the residual and degeneracy gates.
std::vector<ParamSet> solve_system(const AlgebraicSystem& system,
                                   const std::map<Symbol, double>& fixed,
                                   const SolveOptions& options = {});

/// Largest componentwise distance between two sets (eta and all a_k).
double set_distance(const ParamSet& x, const ParamSet& y);

}  // namespace sforge
