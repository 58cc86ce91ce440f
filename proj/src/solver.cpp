#include "sforge/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <utility>

namespace sforge {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// relative size below which a folded coefficient does not inform the scaling
constexpr long double kCancelled = 2e-2;

/// An equation reduced to a polynomial in the unknowns only.
struct NumericTerm {
  long double coefficient;
  std::vector<std::uint32_t> powers;  // per unknown
};

class NumericSystem {
 public:
  NumericSystem(const AlgebraicSystem& system, const std::map<Symbol, double>& fixed)
      : unknowns_(system.unknowns) {
    for (const auto& eq : system.equations) {
      std::vector<NumericTerm> terms;
      for (const auto& [mono, coef] : eq.terms()) {
        NumericTerm t{coef.to<long double>(), std::vector<std::uint32_t>(unknowns_.size(), 0)};
        const auto& e = mono.exponents();
        for (std::uint32_t id = 0; id < e.size(); ++id) {
          if (e[id] == 0) continue;
          const Symbol s{id};
          const auto u = std::find(unknowns_.begin(), unknowns_.end(), s);
          if (u != unknowns_.end()) {
            t.powers[static_cast<std::size_t>(u - unknowns_.begin())] = e[id];
            continue;
          }
          const auto f = fixed.find(s);
          if (f == fixed.end()) {
            throw Error(ErrorCode::InvalidInput, "symbol " + s.name() + " is neither fixed nor an unknown");
          }
          t.coefficient *= std::pow(static_cast<long double>(f->second), static_cast<int>(e[id]));
        }
        // fold the fixed parameters: one term per monomial in the unknowns
        const auto same = std::find_if(terms.begin(), terms.end(),
                                       [&](const NumericTerm& o) { return o.powers == t.powers; });
        if (same == terms.end()) {
          terms.push_back(std::move(t));
        } else {
          same->coefficient += t.coefficient;
        }
      }
      equations_.push_back(std::move(terms));
    }
  }

  /// Index of a_N among the unknowns, or -1 without coefficients.
  Eigen::Index top_coefficient() const {
    Eigen::Index top = -1;
    for (std::size_t j = 0; j < unknowns_.size(); ++j) {
      if (!unknowns_[j].is_coefficient()) continue;
      if (top < 0 || unknowns_[j].coefficient_index() > unknowns_[static_cast<std::size_t>(top)].coefficient_index()) {
        top = static_cast<Eigen::Index>(j);
      }
    }
    return top;
  }

  Eigen::Index rows() const { return static_cast<Eigen::Index>(equations_.size()); }
  Eigen::Index cols() const { return static_cast<Eigen::Index>(unknowns_.size()); }
  const std::vector<Symbol>& unknowns() const { return unknowns_; }

  /// Variable and equation scales that make coefficient magnitudes as uniform
  /// as possible (least squares in log10, Meintjes-Morgan). Terms far below
  /// the largest in their equation are near-cancellations and left out of the
  /// fit. Returns {variable scale, equation scale}.
  std::pair<Vec, Vec> equilibrate() const {
    std::vector<std::pair<std::size_t, const NumericTerm*>> rows;
    for (std::size_t i = 0; i < equations_.size(); ++i) {
      long double big = 0;
      for (const auto& t : equations_[i]) big = std::max(big, std::fabs(t.coefficient));
      for (const auto& t : equations_[i]) {
        if (t.coefficient != 0 && std::fabs(t.coefficient) >= kCancelled * big) rows.emplace_back(i, &t);
      }
    }
    const Eigen::Index nv = cols(), ne = this->rows();
    Mat M = Mat::Zero(static_cast<Eigen::Index>(rows.size()), nv + ne);
    Vec rhs(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto [i, t] = rows[k];
      const auto row = static_cast<Eigen::Index>(k);
      for (Eigen::Index j = 0; j < nv; ++j) M(row, j) = t->powers[static_cast<std::size_t>(j)];
      M(row, nv + static_cast<Eigen::Index>(i)) = 1;
      rhs[row] = -static_cast<double>(std::log10(std::fabs(t->coefficient)));
    }
    Vec sol = Vec::Zero(nv + ne);
    if (M.rows() > 0) sol = M.completeOrthogonalDecomposition().solve(rhs);
    Vec var = sol.head(nv).unaryExpr([](double v) { return std::pow(10.0, v); });
    Vec eq = sol.tail(ne).unaryExpr([](double v) { return std::pow(10.0, v); });
    return {var, eq};
  }

  void evaluate(const Vec& x, Vec& r, Mat* jac) const {
    r.resize(rows());
    if (jac) jac->setZero(rows(), cols());
    for (Eigen::Index i = 0; i < rows(); ++i) {
      long double sum = 0;
      for (const auto& t : equations_[static_cast<std::size_t>(i)]) {
        long double v = t.coefficient;
        for (Eigen::Index j = 0; j < cols(); ++j) v *= ipow(x[j], t.powers[static_cast<std::size_t>(j)]);
        sum += v;
        if (!jac) continue;
        for (Eigen::Index j = 0; j < cols(); ++j) {
          const auto pj = t.powers[static_cast<std::size_t>(j)];
          if (pj == 0) continue;
          long double d = t.coefficient * pj * ipow(x[j], pj - 1);
          for (Eigen::Index k = 0; k < cols(); ++k) {
            if (k != j) d *= ipow(x[k], t.powers[static_cast<std::size_t>(k)]);
          }
          (*jac)(i, j) += static_cast<double>(d);
        }
      }
      r[i] = static_cast<double>(sum);
    }
  }

 private:
  static long double ipow(double base, std::uint32_t e) {
    long double r = 1;
    for (std::uint32_t k = 0; k < e; ++k) r *= base;
    return r;
  }

  std::vector<Symbol> unknowns_;
  std::vector<std::vector<NumericTerm>> equations_;
};

struct Candidate {
  Vec x;
  double residual;
};

/// Residual and Jacobian in scaled coordinates x = var * z, rows times eq,
/// deflated against a_N = 0. The degenerate families (U constant or zero) all
/// have a_N = 0 and would otherwise attract most starts; the factor
/// 1 + 1 / z_N^2 removes them and keeps every other root.
void scaled(const NumericSystem& sys, const Vec& var, const Vec& eq, Eigen::Index top, const Vec& z, Vec& r,
            Mat* jac) {
  sys.evaluate(var.cwiseProduct(z), r, jac);
  r = r.cwiseProduct(eq);
  if (jac) *jac = eq.asDiagonal() * *jac * var.asDiagonal();
  if (top < 0) return;
  const double zt = z[top];
  if (zt == 0) {
    r.setConstant(std::numeric_limits<double>::infinity());
    return;
  }
  const double M = 1 + 1 / (zt * zt);
  if (jac) {
    *jac *= M;
    jac->col(top) += r * (-2 / (zt * zt * zt));
  }
  r *= M;
}

/// Levenberg-Marquardt with Marquardt scaling on the deflated system, then
/// a few Gauss-Newton polish steps in raw coordinates. Returns nothing on
/// numerical breakdown.
std::optional<Candidate> descend(const NumericSystem& sys, const Vec& var, const Vec& eq, Eigen::Index top, Vec z,
                                 unsigned max_iterations) {
  Vec r, r_trial;
  Mat J;
  scaled(sys, var, eq, top, z, r, &J);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  for (unsigned it = 0; it < max_iterations; ++it) {
    if (!std::isfinite(cost)) return std::nullopt;
    if (r.lpNorm<Eigen::Infinity>() < 1e-15) break;
    const Mat JtJ = J.transpose() * J;
    const Vec g = J.transpose() * r;
    Mat damped = JtJ;
    damped.diagonal() += lambda * (JtJ.diagonal().array() + 1e-12).matrix();
    const Vec step = damped.ldlt().solve(-g);
    if (!step.allFinite()) return std::nullopt;
    const Vec trial = z + step;
    scaled(sys, var, eq, top, trial, r_trial, nullptr);
    const double trial_cost = r_trial.squaredNorm();
    if (std::isfinite(trial_cost) && trial_cost < cost) {
      z = trial;
      scaled(sys, var, eq, top, z, r, &J);
      cost = trial_cost;
      lambda = std::max(lambda / 3.0, 1e-15);
      if (step.lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + z.lpNorm<Eigen::Infinity>())) break;
    } else {
      lambda *= 4.0;
      if (lambda > 1e16) break;
    }
  }
  Vec x = var.cwiseProduct(z);
  // polish: undamped least-squares Newton while it keeps improving
  sys.evaluate(x, r, &J);
  cost = r.squaredNorm();
  for (int it = 0; it < 8; ++it) {
    const Vec step = J.colPivHouseholderQr().solve(-r);
    if (!step.allFinite()) break;
    const Vec trial = x + step;
    sys.evaluate(trial, r_trial, nullptr);
    if (!(r_trial.squaredNorm() < cost)) break;
    x = trial;
    sys.evaluate(x, r, &J);
    cost = r.squaredNorm();
  }
  if (!x.allFinite() || !std::isfinite(cost)) return std::nullopt;
  return Candidate{x, r.lpNorm<Eigen::Infinity>()};
}

}  // namespace

double set_distance(const ParamSet& x, const ParamSet& y) {
  double d = std::fabs(x.eta - y.eta);
  const std::size_t len = std::max(x.a.size(), y.a.size());
  for (std::size_t k = 0; k < len; ++k) {
    const double xa = k < x.a.size() ? x.a[k] : 0.0;
    const double ya = k < y.a.size() ? y.a[k] : 0.0;
    d = std::max(d, std::fabs(xa - ya));
  }
  return d;
}

std::vector<ParamSet> solve_system(const AlgebraicSystem& system, const std::map<Symbol, double>& fixed,
                                   const SolveOptions& options) {
  if (options.seeds == 0) throw Error(ErrorCode::InvalidInput, "seeds must be >= 1");
  const NumericSystem sys(system, fixed);
  const Eigen::Index dim = sys.cols();
  const auto [var, eq] = sys.equilibrate();

  // Starting points come from a single deterministic stream, drawn in order.
  std::mt19937_64 rng(options.rng_seed);
  std::uniform_real_distribution<double> uniform(-options.seed_box, options.seed_box);
  auto draw = [&] {
    Vec x(dim);
    for (Eigen::Index j = 0; j < dim; ++j) x[j] = uniform(rng);
    return x;
  };

  std::vector<Candidate> found;
  unsigned completed = 0;
  const unsigned max_draws = options.seeds * 4;
  for (unsigned draws = 0; completed < options.seeds && draws < max_draws; ++draws) {
    auto c = descend(sys, var, eq, sys.top_coefficient(), draw(), options.max_iterations);
    if (!c) continue;  // breakdown: replace with a fresh start
    ++completed;
    found.push_back(std::move(*c));
  }

  const auto& unknowns = sys.unknowns();
  std::vector<ParamSet> accepted;
  for (const auto& c : found) {
    if (!(c.residual < options.accept_residual)) continue;
    ParamSet s;
    s.set_tag = SetTag::Numeric;
    for (Eigen::Index j = 0; j < dim; ++j) {
      const Symbol u = unknowns[static_cast<std::size_t>(j)];
      if (u == Symbol::eta()) {
        s.eta = c.x[j];
      } else {
        const auto k = u.coefficient_index();
        if (s.a.size() <= k) s.a.resize(k + 1, 0.0);
        s.a[k] = c.x[j];
      }
    }
    if (s.a.empty() || std::fabs(s.a.back()) <= options.degenerate_tolerance) continue;
    s.residual_norm = c.residual;
    accepted.push_back(std::move(s));
  }

  std::sort(accepted.begin(), accepted.end(), [](const ParamSet& x, const ParamSet& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.eta < y.eta;
  });
  std::vector<ParamSet> distinct;
  for (auto& s : accepted) {
    const bool duplicate = std::any_of(distinct.begin(), distinct.end(), [&](const ParamSet& d) {
      return set_distance(d, s) < options.dedup_tolerance;
    });
    if (!duplicate) distinct.push_back(std::move(s));
  }
  if (distinct.empty()) {
    throw Error(ErrorCode::NoSolutionFound,
                "no non-degenerate root after " + std::to_string(completed) + " starts");
  }
  return distinct;
}

}  // namespace sforge
