#pragma once

#include "sforge/errors.hpp"
#include "sforge/expansion.hpp"
#include "sforge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

namespace sforge {

/// Sign of Lambda = B^2 - 4C selects the branch of G.
enum class WaveCase { Exp, Trig };

constexpr std::string_view to_string(WaveCase c) { return c == WaveCase::Exp ? "EXP" : "TRIG"; }

struct SolutionKind {
  SetTag set = SetTag::Set1;
  WaveCase wave_case = WaveCase::Exp;

  friend bool operator==(const SolutionKind&, const SolutionKind&) = default;
};

template <class Scalar>
struct WaveParams {
  Scalar A = 0;
  Scalar B = 1;
  Scalar C = Scalar(0.1);
  Scalar C1 = 1;
  Scalar C2 = 1;
  Scalar n = 1;
  Scalar m = 1;
  Scalar alpha = 1;
  Scalar t = 1;
  SetTag set = SetTag::Set1;
};

/// Validated parameters plus everything derived from them. The coefficient
/// block is filled from the closed-form set formulas and may be overridden
/// afterwards (e.g. to inject a deliberate corruption).
template <class Scalar>
struct WaveConfig {
  WaveParams<Scalar> params;
  Scalar lambda = 0;
  SetCoefficients<Scalar> coeffs{};
  Scalar p = 0;

  SolutionKind kind() const {
    return {params.set, lambda > Scalar(0) ? WaveCase::Exp : WaveCase::Trig};
  }
};

using WaveConfigd = WaveConfig<double>;

template <class Scalar>
WaveConfig<Scalar> make_wave_config(const WaveParams<Scalar>& params) {
  const auto& q = params;
  if (q.alpha == Scalar(0)) throw Error(ErrorCode::AlphaZero, "alpha must be nonzero");
  if (Scalar(2) * q.n + q.m == Scalar(0)) throw Error(ErrorCode::DegenerateDirection, "2n + m must be nonzero");
  const Scalar lambda = q.B * q.B - Scalar(4) * q.C;
  if (lambda == Scalar(0)) throw Error(ErrorCode::LambdaZero, "Lambda = B^2 - 4C = 0 has no closed form here");
  if (q.B - q.C - Scalar(1) == Scalar(0)) {
    throw Error(ErrorCode::DegenerateAmplitude, "B - C - 1 = 0 makes a2 vanish");
  }
  if (q.C1 == Scalar(0) && q.C2 == Scalar(0)) {
    throw Error(ErrorCode::ZeroIntegrationConstants, "C1 and C2 cannot both be zero");
  }
  if (q.set == SetTag::Numeric) throw Error(ErrorCode::InvalidInput, "wave config needs SET1 or SET2");

  WaveConfig<Scalar> cfg;
  cfg.params = params;
  cfg.lambda = lambda;
  cfg.coeffs = closed_form_set_coefficients<Scalar>(q.set, q.B, q.C, q.n, q.m, q.alpha);
  cfg.p = p_from_eta<Scalar>(cfg.coeffs.eta, q.n, q.m);
  return cfg;
}

/// A point value that may sit on (or numerically at) a pole.
template <class Scalar>
struct Sample {
  Scalar value = 0;
  bool singular = false;
};

inline constexpr double kSingularRelativeThreshold = 1e-12;

template <class Scalar>
Scalar xi(const WaveConfig<Scalar>& cfg, Scalar x, Scalar y) {
  return cfg.params.n * x + cfg.params.m * y - cfg.p * cfg.params.t;
}

template <class Scalar>
Scalar xi(const WaveConfig<Scalar>& cfg, Scalar x, Scalar y, Scalar t) {
  return cfg.params.n * x + cfg.params.m * y - cfg.p * t;
}

namespace detail {

template <class Scalar>
Sample<Scalar> ratio(Scalar num, Scalar den, Scalar scale) {
  if (!(scale > Scalar(0)) || std::abs(den) < Scalar(kSingularRelativeThreshold) * scale) {
    return {std::numeric_limits<Scalar>::quiet_NaN(), true};
  }
  return {num / den, false};
}

/// Weights (e1, e2) proportional to (exp(r1 xi), exp(r2 xi)) with the larger
/// one scaled to 1, where r2 - r1 = sqrt(Lambda) > 0.
template <class Scalar>
std::pair<Scalar, Scalar> exp_weights(Scalar s, Scalar x) {
  const Scalar z = s * x;
  return z >= Scalar(0) ? std::pair<Scalar, Scalar>{std::exp(-z), Scalar(1)}
                        : std::pair<Scalar, Scalar>{Scalar(1), std::exp(z)};
}

template <class Scalar>
void require_kind(const WaveConfig<Scalar>& cfg, const SolutionKind& kind) {
  if (kind.wave_case != cfg.kind().wave_case) {
    throw Error(ErrorCode::CaseMismatch, std::string("case ") + std::string(to_string(kind.wave_case)) +
                                             " does not match the sign of Lambda");
  }
  if (kind.set != cfg.params.set) throw Error(ErrorCode::CaseMismatch, "solution set does not match config");
}

}  // namespace detail

/// G = -A + C1 e^{r1 xi} + C2 e^{r2 xi}, r1,2 = (-B -/+ sqrt(Lambda))/2 for
/// Lambda > 0; G = -A + e^{-B xi/2}(C1 cos(w xi) + C2 sin(w xi)),
/// w = sqrt(-Lambda)/2 for Lambda < 0.
template <class Scalar>
Scalar eval_G(const WaveConfig<Scalar>& cfg, Scalar x) {
  const auto& q = cfg.params;
  if (cfg.lambda > Scalar(0)) {
    const Scalar s = std::sqrt(cfg.lambda);
    const Scalar r1 = (-q.B - s) / 2;
    const Scalar r2 = (-q.B + s) / 2;
    return -q.A + q.C1 * std::exp(r1 * x) + q.C2 * std::exp(r2 * x);
  }
  const Scalar w = std::sqrt(-cfg.lambda) / 2;
  return -q.A + std::exp(-q.B * x / 2) * (q.C1 * std::cos(w * x) + q.C2 * std::sin(w * x));
}

/// phi = G'/(G' + G + A). With H = G + A both numerator and denominator carry a
/// common exponential factor, which is divided out analytically.
template <class Scalar>
Sample<Scalar> eval_phi(const WaveConfig<Scalar>& cfg, Scalar x) {
  const auto& q = cfg.params;
  if (cfg.lambda > Scalar(0)) {
    const Scalar s = std::sqrt(cfg.lambda);
    const Scalar r1 = (-q.B - s) / 2;
    const Scalar r2 = (-q.B + s) / 2;
    const auto [e1, e2] = detail::exp_weights(s, x);
    const Scalar num = q.C1 * r1 * e1 + q.C2 * r2 * e2;
    const Scalar den = q.C1 * (r1 + 1) * e1 + q.C2 * (r2 + 1) * e2;
    const Scalar scale = std::abs(q.C1 * (r1 + 1) * e1) + std::abs(q.C2 * (r2 + 1) * e2);
    return detail::ratio(num, den, scale);
  }
  const Scalar w = std::sqrt(-cfg.lambda) / 2;
  const Scalar c = std::cos(w * x);
  const Scalar sn = std::sin(w * x);
  const Scalar h = q.C1 * c + q.C2 * sn;
  const Scalar dh = -q.B / 2 * h + w * (q.C2 * c - q.C1 * sn);
  const Scalar scale = (std::abs(1 - q.B / 2) + w) * (std::abs(q.C1) + std::abs(q.C2));
  return detail::ratio(dh, dh + h, scale);
}

/// The closed-form profile U = a0 + a1 R + a2 R^2 with R the bracket ratio
/// written directly in exponentials (EXP) or sinusoids (TRIG).
template <class Scalar>
Sample<Scalar> eval_U(const SolutionKind& kind, const WaveConfig<Scalar>& cfg, Scalar x) {
  detail::require_kind(cfg, kind);
  const auto& q = cfg.params;
  Sample<Scalar> bracket;
  if (kind.wave_case == WaveCase::Exp) {
    const Scalar s = std::sqrt(cfg.lambda);
    // C1 (B+s) + C2 (B-s) e^{s xi}, over C1 (B+s-2) + C2 (B-s-2) e^{s xi}
    const auto [e1, e2] = detail::exp_weights(s, x);
    const Scalar num = q.C1 * (q.B + s) * e1 + q.C2 * (q.B - s) * e2;
    const Scalar den = q.C1 * (q.B + s - 2) * e1 + q.C2 * (q.B - s - 2) * e2;
    const Scalar scale = std::abs(q.C1 * (q.B + s - 2) * e1) + std::abs(q.C2 * (q.B - s - 2) * e2);
    bracket = detail::ratio(num, den, scale);
  } else {
    const Scalar r = std::sqrt(-cfg.lambda);
    const Scalar sn = std::sin(r / 2 * x);
    const Scalar c = std::cos(r / 2 * x);
    const Scalar num = sn * (q.B * q.C2 + q.C1 * r) + c * (q.B * q.C1 - q.C2 * r);
    const Scalar ds = (q.B - 2) * q.C2 + q.C1 * r;
    const Scalar dc = (q.B - 2) * q.C1 - q.C2 * r;
    bracket = detail::ratio(num, sn * ds + c * dc, std::abs(ds) + std::abs(dc));
  }
  if (bracket.singular) return bracket;
  const auto& a = cfg.coeffs;
  return {a.a0 + a.a1 * bracket.value + a.a2 * bracket.value * bracket.value, false};
}

/// Zeros of G' + G + A (the poles of phi and U) inside [lo, hi], ascending.
template <class Scalar>
std::vector<Scalar> poles(const WaveConfig<Scalar>& cfg, Scalar lo, Scalar hi) {
  std::vector<Scalar> out;
  if (hi < lo) std::swap(lo, hi);
  const auto& q = cfg.params;
  if (cfg.lambda > Scalar(0)) {
    const Scalar s = std::sqrt(cfg.lambda);
    const Scalar k1 = q.C1 * ((-q.B - s) / 2 + 1);
    const Scalar k2 = q.C2 * ((-q.B + s) / 2 + 1);
    if (k2 == Scalar(0) || k1 == Scalar(0)) return out;
    const Scalar ratio = -k1 / k2;
    if (ratio <= Scalar(0)) return out;
    const Scalar x = std::log(ratio) / s;
    if (x >= lo && x <= hi) out.push_back(x);
    return out;
  }
  // P cos(w xi) + Q sin(w xi) = R sin(w xi + theta)
  const Scalar w = std::sqrt(-cfg.lambda) / 2;
  const Scalar P = (1 - q.B / 2) * q.C1 + w * q.C2;
  const Scalar Q = (1 - q.B / 2) * q.C2 - w * q.C1;
  const Scalar theta = std::atan2(P, Q);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const auto k_lo = static_cast<long long>(std::ceil((w * lo + theta) / pi));
  const auto k_hi = static_cast<long long>(std::floor((w * hi + theta) / pi));
  for (long long k = k_lo; k <= k_hi; ++k) {
    const Scalar x = (Scalar(k) * pi - theta) / w;
    if (x >= lo && x <= hi) out.push_back(x);
  }
  return out;
}

/// Distance from xi to the nearest pole; +inf when there is none.
template <class Scalar>
Scalar pole_distance(const WaveConfig<Scalar>& cfg, Scalar x) {
  Scalar reach;
  if (cfg.lambda > Scalar(0)) {
    reach = std::numeric_limits<Scalar>::max() / 4;
  } else {
    reach = std::numbers::pi_v<Scalar> / (std::sqrt(-cfg.lambda) / 2);  // one pole spacing
  }
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (Scalar p : poles(cfg, x - reach, x + reach)) best = std::min(best, std::abs(p - x));
  return best;
}

/// w(xi) = integral of U from xi0 to xi (so w(xi0) = 0), adaptive Gauss-Kronrod.
/// Throws SingularPath if a pole lies on the segment.
template <class Scalar>
Scalar eval_w(const SolutionKind& kind, const WaveConfig<Scalar>& cfg, Scalar x, Scalar x0,
              Scalar abs_tol = Scalar(1e-10)) {
  detail::require_kind(cfg, kind);
  if (x == x0) return Scalar(0);
  if (!poles(cfg, std::min(x, x0), std::max(x, x0)).empty()) {
    throw Error(ErrorCode::SingularPath, "pole inside the integration segment");
  }
  bool hit_pole = false;
  auto integrand = [&](Scalar z) {
    const auto u = eval_U(kind, cfg, z);
    if (u.singular) hit_pole = true;
    return u.singular ? Scalar(0) : u.value;
  };
  const auto r = integrate(integrand, x0, x, abs_tol);
  if (hit_pole || !std::isfinite(r.value)) throw Error(ErrorCode::SingularPath, "integrand is singular on the segment");
  return r.value;
}

template <class Scalar>
struct ProfileSample {
  Scalar xi = 0;
  Scalar U = 0;
  Scalar w = 0;
  bool singular = false;
};

/// U and w over arbitrary xi points. A sample is flagged singular when U is
/// singular there or a pole lies within `flag_radius`. w is zero at xi0 on the
/// pole-free interval containing xi0; every other pole-free interval is
/// anchored at its sample nearest to xi0. Flagged samples get w = NaN.
template <class Scalar>
std::vector<ProfileSample<Scalar>> sample_profile(const SolutionKind& kind, const WaveConfig<Scalar>& cfg,
                                                  std::span<const Scalar> xis, Scalar xi0, Scalar flag_radius) {
  detail::require_kind(cfg, kind);
  const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
  std::vector<ProfileSample<Scalar>> out(xis.size());
  for (std::size_t i = 0; i < xis.size(); ++i) {
    const auto u = eval_U(kind, cfg, xis[i]);
    out[i].xi = xis[i];
    out[i].U = u.value;
    out[i].singular = u.singular || pole_distance(cfg, xis[i]) < flag_radius;
    out[i].w = nan;
  }
  if (xis.empty()) return out;

  std::vector<std::size_t> order(xis.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xis[a] < xis[b]; });

  const Scalar lo = std::min(xis[order.front()], xi0);
  const Scalar hi = std::max(xis[order.back()], xi0);
  const auto cuts = poles(cfg, lo, hi);
  auto segment_of = [&](Scalar x) {
    return static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), x) - cuts.begin());
  };

  // Walk each pole-free run of sorted samples outward from its anchor.
  std::size_t begin = 0;
  while (begin < order.size()) {
    const std::size_t seg = segment_of(xis[order[begin]]);
    std::size_t end = begin;
    while (end < order.size() && segment_of(xis[order[end]]) == seg) ++end;

    Scalar anchor_x;
    std::size_t anchor;  // first sorted index at or after the anchor
    if (segment_of(xi0) == seg) {
      anchor_x = xi0;
      anchor = static_cast<std::size_t>(
          std::lower_bound(order.begin() + begin, order.begin() + end, xi0,
                           [&](std::size_t i, Scalar v) { return xis[i] < v; }) - order.begin());
    } else {
      anchor = xis[order[begin]] > xi0 ? begin : end - 1;
      anchor_x = xis[order[anchor]];
    }

    auto step = [&](Scalar from, Scalar to) {
      return integrate([&](Scalar z) { return eval_U(kind, cfg, z).value; }, from, to, Scalar(1e-10)).value;
    };
    Scalar x_prev = anchor_x, w_prev = 0;
    for (std::size_t k = anchor; k < end; ++k) {
      auto& s = out[order[k]];
      if (s.singular) continue;
      w_prev += step(x_prev, s.xi);
      x_prev = s.xi;
      s.w = w_prev;
    }
    x_prev = anchor_x;
    w_prev = 0;
    for (std::size_t k = anchor; k-- > begin;) {
      auto& s = out[order[k]];
      if (s.singular) continue;
      w_prev += step(x_prev, s.xi);
      x_prev = s.xi;
      s.w = w_prev;
    }
    begin = end;
  }
  return out;
}

}  // namespace sforge
