#pragma once

#include "sforge/closed_form.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace sforge {

enum class ResidualTarget { Pde, Ode3, Ode2, GOde, Riccati };
enum class ResidualPath { Exact, FiniteDifference };

constexpr std::string_view to_string(ResidualTarget t) {
  switch (t) {
    case ResidualTarget::Pde: return "PDE";
    case ResidualTarget::Ode3: return "ODE3";
    case ResidualTarget::Ode2: return "ODE2";
    case ResidualTarget::GOde: return "G_ODE";
    case ResidualTarget::Riccati: return "RICCATI";
  }
  return "?";
}

constexpr std::string_view to_string(ResidualPath p) {
  return p == ResidualPath::Exact ? "exact" : "finite_difference";
}

/// Relative residuals divide the largest |residual| by the largest single-term
/// magnitude seen anywhere on the grid; the terms cancel by construction, so
/// their sum is no usable scale.
struct ResidualReport {
  ResidualTarget target = ResidualTarget::Ode2;
  ResidualPath path = ResidualPath::FiniteDifference;
  std::size_t grid_points = 0;
  double max_abs_residual = 0;
  double max_rel_residual = 0;
  std::size_t skipped_singular = 0;
  double threshold = 0;

  bool pass() const { return max_rel_residual < threshold; }
};

namespace threshold {
inline constexpr double kOde2Exact = 1e-10;
inline constexpr double kOde2FiniteDifference = 1e-6;
inline constexpr double kOde3 = 1e-5;
inline constexpr double kPde = 1e-4;
inline constexpr double kAuxiliary = 1e-7;
}  // namespace threshold

struct XiGrid {
  double min = -20;
  double max = 20;
  std::size_t steps = 2001;

  std::vector<double> points() const;
};

struct SpaceTimeGrid {
  double x_min = -5, x_max = 5;
  std::size_t x_steps = 41;
  double y_min = -5, y_max = 5;
  std::size_t y_steps = 41;
  double t_min = 0, t_max = 2;
  std::size_t t_steps = 5;
};

/// Finite-difference step; 0 picks 1e-2 / max(1, sqrt|Lambda|). Near a pole
/// the step shrinks to (pole distance) / 200, or / 50 for the third-derivative
/// stencils of residual_ode3.
struct StencilOptions {
  double step = 0;
};

struct Ode2Reports {
  ResidualReport exact;
  ResidualReport finite_difference;
};

/// n^3 m U'' + alpha n^2 m U^2 + eta U. The exact path evaluates U'' from the
/// twice-differentiated ansatz at phi(xi); the other path applies a 4th-order
/// central stencil to eval_U.
Ode2Reports residual_ode2(const SolutionKind& kind, const WaveConfigd& cfg, const XiGrid& grid,
                          const StencilOptions& opts = {});

/// n^3 m U''' + 2 alpha n^2 m U U' + eta U' with 6th-order central stencils.
/// Any constant U zeroes this residual, so residual_ode2 is the primary gate.
ResidualReport residual_ode3(const SolutionKind& kind, const WaveConfigd& cfg, const XiGrid& grid,
                             const StencilOptions& opts = {});

/// u_xxxy + alpha (u_y u_x)_x + (u_y + 2u_x)_t - (u_yy + 2u_xx) for
/// u(x, y, t) = w(n x + m y - p t), with 4th-order tensor-product stencils.
/// Points whose stencil would pass near a singular trace count as skipped.
ResidualReport residual_pde(const SolutionKind& kind, const WaveConfigd& cfg, const SpaceTimeGrid& grid,
                            const StencilOptions& opts = {});

/// dphi/dxi - (-C + (2C - B) phi + (B - C - 1) phi^2), derivative by stencil.
ResidualReport residual_riccati(const WaveConfigd& cfg, const XiGrid& grid, const StencilOptions& opts = {});

/// G'' + B G' + C G + A C, derivatives by stencil.
ResidualReport residual_g_ode(const WaveConfigd& cfg, const XiGrid& grid, const StencilOptions& opts = {});

}  // namespace sforge
