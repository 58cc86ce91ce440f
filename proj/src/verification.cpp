#include "sforge/verification.hpp"

#include "sforge/phi_poly.hpp"

#include <array>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <map>
#include <tuple>

namespace sforge {

namespace {

// Central-difference weights, index 0 is offset -radius.
constexpr std::array<double, 5> kFirst4 = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
constexpr std::array<double, 5> kSecond4 = {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
constexpr std::array<double, 7> kThird4 = {1.0 / 8, -1.0, 13.0 / 8, 0.0, -13.0 / 8, 1.0, -1.0 / 8};
constexpr std::array<double, 7> kFirst6 = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
constexpr std::array<double, 9> kThird6 = {-7.0 / 240, 3.0 / 10, -169.0 / 120, 61.0 / 30, 0.0,
                                           -61.0 / 30, 169.0 / 120, -3.0 / 10, 7.0 / 240};

// Poles closer than this to the evaluation point are skipped outright.
constexpr double kPoleExclusion = 1e-6;
// PDE points within this many stencil reaches (in xi) of a singular trace are
// skipped: the mixed stencils lose accuracy long before they hit the pole.
constexpr double kTraceGuard = 10;

class Accumulator {
 public:
  Accumulator(ResidualTarget target, ResidualPath path, double threshold) {
    report_.target = target;
    report_.path = path;
    report_.threshold = threshold;
  }

  /// `weight` scales residual and terms for the relative measure only.
  void add(double residual, std::initializer_list<double> terms, double weight = 1) {
    ++report_.grid_points;
    report_.max_abs_residual = std::max(report_.max_abs_residual, std::fabs(residual));
    max_weighted_ = std::max(max_weighted_, weight * std::fabs(residual));
    for (double t : terms) max_term_ = std::max(max_term_, weight * std::fabs(t));
    if (!std::isfinite(residual)) nonfinite_ = true;
  }

  void skip() {
    ++report_.grid_points;
    ++report_.skipped_singular;
  }

  ResidualReport finish() const {
    ResidualReport r = report_;
    if (nonfinite_) {
      r.max_abs_residual = r.max_rel_residual = std::numeric_limits<double>::infinity();
    } else if (max_term_ > 0) {
      r.max_rel_residual = max_weighted_ / max_term_;
    } else {
      r.max_rel_residual = r.max_abs_residual == 0 ? 0 : std::numeric_limits<double>::infinity();
    }
    return r;
  }

 private:
  ResidualReport report_;
  double max_term_ = 0;
  double max_weighted_ = 0;
  bool nonfinite_ = false;
};

double default_step(const WaveConfigd& cfg, const StencilOptions& opts, double base) {
  if (opts.step > 0) return opts.step;
  return base / std::max(1.0, std::sqrt(std::fabs(cfg.lambda)));
}

/// Shrinks the step to d / `ratio` within distance d of a pole; returns 0 when
/// the point must be skipped.
double local_step(const WaveConfigd& cfg, double x, double h, double ratio = 200) {
  const double d = pole_distance(cfg, x);
  if (d < kPoleExclusion) return 0;
  return std::min(h, d / ratio);
}

/// Damps the pole blow-up of terms growing like d^-order at pole distance d,
/// in units of the natural length 1 / sqrt|Lambda|. Without it the few points
/// next to a pole set the term scale and hide errors everywhere else.
double pole_weight(const WaveConfigd& cfg, double x, int order) {
  const double d = pole_distance(cfg, x) * std::sqrt(std::fabs(cfg.lambda));
  return d >= 1 ? 1.0 : std::pow(d, order);
}

/// Applies a central stencil to f; nullopt if any sample is singular.
template <std::size_t N, class F>
std::optional<double> apply(const std::array<double, N>& w, F&& f, double x, double h, int order) {
  constexpr int radius = static_cast<int>(N / 2);
  double acc = 0;
  for (int i = -radius; i <= radius; ++i) {
    const double weight = w[static_cast<std::size_t>(i + radius)];
    if (weight == 0) continue;
    const auto s = f(x + i * h);
    if (!s) return std::nullopt;
    acc += weight * *s;
  }
  return acc / std::pow(h, order);
}

auto u_of(const SolutionKind& kind, const WaveConfigd& cfg) {
  return [&kind, &cfg](double x) -> std::optional<double> {
    const auto s = eval_U(kind, cfg, x);
    if (s.singular) return std::nullopt;
    return s.value;
  };
}

}  // namespace

std::vector<double> XiGrid::points() const {
  if (steps == 0) throw Error(ErrorCode::InvalidInput, "grid needs at least one point");
  if (!(std::isfinite(min) && std::isfinite(max))) throw Error(ErrorCode::InvalidInput, "grid bounds must be finite");
  std::vector<double> pts(steps);
  if (steps == 1) {
    pts[0] = min;
    return pts;
  }
  const double dx = (max - min) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) pts[i] = min + dx * static_cast<double>(i);
  pts.back() = max;
  return pts;
}

Ode2Reports residual_ode2(const SolutionKind& kind, const WaveConfigd& cfg, const XiGrid& grid,
                          const StencilOptions& opts) {
  detail::require_kind(cfg, kind);
  const auto& q = cfg.params;
  const auto& a = cfg.coeffs;
  const double c_lin = q.n * q.n * q.n * q.m;
  const double c_sq = q.alpha * q.n * q.n * q.m;

  Binding binding;
  binding.set(Symbol::B(), q.B).set(Symbol::C(), q.C);
  binding.set(Symbol::a(0), a.a0).set(Symbol::a(1), a.a1).set(Symbol::a(2), a.a2);
  const PhiPoly ansatz = build_ansatz(2);
  const Eigen::VectorXd u_coeffs = to_numeric(ansatz, binding);
  const Eigen::VectorXd upp_coeffs = to_numeric(differentiate(ansatz, 2), binding);

  Accumulator exact(ResidualTarget::Ode2, ResidualPath::Exact, threshold::kOde2Exact);
  Accumulator fd(ResidualTarget::Ode2, ResidualPath::FiniteDifference, threshold::kOde2FiniteDifference);
  const double h0 = default_step(cfg, opts, 1e-2);
  const auto u = u_of(kind, cfg);

  for (double x : grid.points()) {
    const auto phi = eval_phi(cfg, x);
    if (phi.singular) {
      exact.skip();
    } else {
      const double U = horner(u_coeffs, phi.value);
      const double Upp = horner(upp_coeffs, phi.value);
      const double t1 = c_lin * Upp, t2 = c_sq * U * U, t3 = a.eta * U;
      exact.add(t1 + t2 + t3, {t1, t2, t3}, pole_weight(cfg, x, 4));
    }

    const double h = local_step(cfg, x, h0);
    const auto U = u(x);
    const auto Upp = h > 0 ? apply(kSecond4, u, x, h, 2) : std::nullopt;
    if (!U || !Upp) {
      fd.skip();
      continue;
    }
    const double t1 = c_lin * *Upp, t2 = c_sq * *U * *U, t3 = a.eta * *U;
    fd.add(t1 + t2 + t3, {t1, t2, t3}, pole_weight(cfg, x, 4));
  }
  return {exact.finish(), fd.finish()};
}

ResidualReport residual_ode3(const SolutionKind& kind, const WaveConfigd& cfg, const XiGrid& grid,
                             const StencilOptions& opts) {
  detail::require_kind(cfg, kind);
  const auto& q = cfg.params;
  const double c_lin = q.n * q.n * q.n * q.m;
  const double c_nl = 2 * q.alpha * q.n * q.n * q.m;
  Accumulator acc(ResidualTarget::Ode3, ResidualPath::FiniteDifference, threshold::kOde3);
  const double h0 = default_step(cfg, opts, 2e-2);
  const auto u = u_of(kind, cfg);

  for (double x : grid.points()) {
    const double h = local_step(cfg, x, h0, 50);
    const auto U = u(x);
    const auto Up = h > 0 ? apply(kFirst6, u, x, h, 1) : std::nullopt;
    const auto Uppp = h > 0 ? apply(kThird6, u, x, h, 3) : std::nullopt;
    if (!U || !Up || !Uppp) {
      acc.skip();
      continue;
    }
    const double t1 = c_lin * *Uppp, t2 = c_nl * *U * *Up, t3 = cfg.coeffs.eta * *Up;
    acc.add(t1 + t2 + t3, {t1, t2, t3}, pole_weight(cfg, x, 5));
  }
  return acc.finish();
}

ResidualReport residual_pde(const SolutionKind& kind, const WaveConfigd& cfg, const SpaceTimeGrid& grid,
                            const StencilOptions& opts) {
  detail::require_kind(cfg, kind);
  const auto& q = cfg.params;
  const double scale = std::max({1.0, std::fabs(q.n), std::fabs(q.m), std::fabs(cfg.p)});
  const double h = default_step(cfg, opts, 1e-2) / (opts.step > 0 ? 1.0 : scale);
  Accumulator acc(ResidualTarget::Pde, ResidualPath::FiniteDifference, threshold::kPde);
  const double reach = h * (3 * std::fabs(q.n) + 2 * std::fabs(q.m) + 2 * std::fabs(cfg.p));

  const auto xs = XiGrid{grid.x_min, grid.x_max, grid.x_steps}.points();
  const auto ys = XiGrid{grid.y_min, grid.y_max, grid.y_steps}.points();
  const auto ts = XiGrid{grid.t_min, grid.t_max, grid.t_steps}.points();

  for (double t : ts) {
    for (double y : ys) {
      for (double x : xs) {
        const double center = xi(cfg, x, y, t);
        if (pole_distance(cfg, center) < kTraceGuard * reach) {
          acc.skip();
          continue;
        }
        // u relative to its value at the stencil center; every PDE term is a derivative.
        std::map<std::tuple<int, int, int>, double> cache;
        auto u = [&](int i, int j, int k) {
          const auto key = std::make_tuple(i, j, k);
          if (auto it = cache.find(key); it != cache.end()) return it->second;
          const double z = xi(cfg, x + i * h, y + j * h, t + k * h);
          const double v = eval_w(kind, cfg, z, center);
          cache.emplace(key, v);
          return v;
        };
        auto d = [&](auto&& wx, auto&& wy, auto&& wt, int order) {
          const int rx = static_cast<int>(wx.size() / 2);
          const int ry = static_cast<int>(wy.size() / 2);
          const int rt = static_cast<int>(wt.size() / 2);
          double s = 0;
          for (int i = -rx; i <= rx; ++i) {
            const double a = wx[static_cast<std::size_t>(i + rx)];
            if (a == 0) continue;
            for (int j = -ry; j <= ry; ++j) {
              const double b = wy[static_cast<std::size_t>(j + ry)];
              if (b == 0) continue;
              for (int k = -rt; k <= rt; ++k) {
                const double c = wt[static_cast<std::size_t>(k + rt)];
                if (c == 0) continue;
                s += a * b * c * u(i, j, k);
              }
            }
          }
          return s / std::pow(h, order);
        };
        constexpr std::array<double, 1> id = {1.0};
        try {
          const double u_xxxy = d(kThird4, kFirst4, id, 4);
          const double u_x = d(kFirst4, id, id, 1);
          const double u_y = d(id, kFirst4, id, 1);
          const double u_xx = d(kSecond4, id, id, 2);
          const double u_yy = d(id, kSecond4, id, 2);
          const double u_xy = d(kFirst4, kFirst4, id, 2);
          const double u_xt = d(kFirst4, id, kFirst4, 2);
          const double u_yt = d(id, kFirst4, kFirst4, 2);
          const double t1 = u_xxxy;
          const double t2 = q.alpha * u_xy * u_x;
          const double t3 = q.alpha * u_y * u_xx;
          const double t4 = u_yt;
          const double t5 = 2 * u_xt;
          const double t6 = -u_yy;
          const double t7 = -2 * u_xx;
          acc.add(t1 + t2 + t3 + t4 + t5 + t6 + t7, {t1, t2, t3, t4, t5, t6, t7}, pole_weight(cfg, center, 5));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::SingularPath) throw;
          acc.skip();
        }
      }
    }
  }
  return acc.finish();
}

ResidualReport residual_riccati(const WaveConfigd& cfg, const XiGrid& grid, const StencilOptions& opts) {
  const auto& q = cfg.params;
  Binding binding;
  binding.set(Symbol::B(), q.B).set(Symbol::C(), q.C);
  const Eigen::VectorXd rule = to_numeric(phi_derivative_rule(), binding);
  Accumulator acc(ResidualTarget::Riccati, ResidualPath::FiniteDifference, threshold::kAuxiliary);
  const double h0 = default_step(cfg, opts, 1e-2);
  auto phi = [&cfg](double x) -> std::optional<double> {
    const auto s = eval_phi(cfg, x);
    if (s.singular) return std::nullopt;
    return s.value;
  };

  for (double x : grid.points()) {
    const double h = local_step(cfg, x, h0);
    const auto f = phi(x);
    const auto fp = h > 0 ? apply(kFirst4, phi, x, h, 1) : std::nullopt;
    if (!f || !fp) {
      acc.skip();
      continue;
    }
    const double t0 = rule[0], t1 = rule[1] * *f, t2 = rule[2] * *f * *f;
    acc.add(*fp - (t0 + t1 + t2), {*fp, t0, t1, t2}, pole_weight(cfg, x, 2));
  }
  return acc.finish();
}

ResidualReport residual_g_ode(const WaveConfigd& cfg, const XiGrid& grid, const StencilOptions& opts) {
  const auto& q = cfg.params;
  Accumulator acc(ResidualTarget::GOde, ResidualPath::FiniteDifference, threshold::kAuxiliary);
  const double h = default_step(cfg, opts, 1e-2);
  auto G = [&cfg](double x) -> std::optional<double> { return eval_G(cfg, x); };

  for (double x : grid.points()) {
    const double g = eval_G(cfg, x);
    const auto gp = apply(kFirst4, G, x, h, 1);
    const auto gpp = apply(kSecond4, G, x, h, 2);
    const double t1 = *gpp, t2 = q.B * *gp, t3 = q.C * g, t4 = q.A * q.C;
    acc.add(t1 + t2 + t3 + t4, {t1, t2, t3, t4});
  }
  return acc.finish();
}

}  // namespace sforge
