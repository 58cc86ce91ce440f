#include "sforge/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sforge {

std::string AlgebraicSystem::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < equations.size(); ++k) {
    out += "[phi^" + std::to_string(k) + "] " + equations[k].to_string() + " = 0\n";
  }
  return out;
}

unsigned balance_number(const ReducedODE& ode) {
  const OdeTerm* linear = nullptr;
  const OdeTerm* nonlinear = nullptr;
  for (const auto& t : ode.terms()) {
    if (t.total_power() == 1) {
      if (!linear || t.derivative_weight() > linear->derivative_weight()) linear = &t;
    } else {
      // strongest = largest growth in N, ties broken by derivative weight
      if (!nonlinear || t.total_power() > nonlinear->total_power() ||
          (t.total_power() == nonlinear->total_power() &&
           t.derivative_weight() > nonlinear->derivative_weight())) {
        nonlinear = &t;
      }
    }
  }
  if (!nonlinear) throw Error(ErrorCode::NoNonlinearTerm, "ODE has no nonlinear term to balance");
  if (!linear) throw Error(ErrorCode::InvalidInput, "ODE has no linear derivative term to balance");

  // N + k = p N + w  =>  N = (k - w) / (p - 1)
  const int k = static_cast<int>(linear->derivative_weight());
  const int w = static_cast<int>(nonlinear->derivative_weight());
  const int p = static_cast<int>(nonlinear->total_power());
  const int num = k - w;
  const int den = p - 1;
  if (num <= 0 || num % den != 0) {
    throw Error(ErrorCode::NonIntegerBalance,
                "balance " + std::to_string(num) + "/" + std::to_string(den) + " is not a positive integer");
  }
  return static_cast<unsigned>(num / den);
}

PhiPoly build_ansatz(unsigned degree) {
  if (degree == 0) throw Error(ErrorCode::InvalidInput, "ansatz degree must be >= 1");
  std::vector<ParamPoly> c;
  for (unsigned k = 0; k <= degree; ++k) c.emplace_back(Symbol::a(k));
  return PhiPoly(std::move(c));
}

AlgebraicSystem collect_system(const ReducedODE& ode, const PhiPoly& ansatz) {
  std::vector<PhiPoly> derivatives;
  auto derivative = [&](unsigned order) -> const PhiPoly& {
    while (derivatives.size() <= order) {
      derivatives.push_back(derivatives.empty() ? ansatz : differentiate(derivatives.back(), 1));
    }
    return derivatives[order];
  };

  PhiPoly total;
  for (const auto& term : ode.terms()) {
    PhiPoly product(term.coefficient);
    for (const auto& f : term.factors) product = product * derivative(f.order).pow(f.power);
    total += product;
  }

  AlgebraicSystem system;
  system.equations = total.coeffs();
  for (int k = 0; k <= ansatz.degree(); ++k) system.unknowns.push_back(Symbol::a(static_cast<std::uint32_t>(k)));
  const bool has_eta = std::any_of(system.equations.begin(), system.equations.end(),
                                   [](const ParamPoly& e) { return e.contains(Symbol::eta()); });
  if (has_eta) system.unknowns.push_back(Symbol::eta());
  return system;
}

const AlgebraicSystem& bkp_system() {
  static const AlgebraicSystem system = [] {
    const ReducedODE ode = bkp_reduced_ode();
    return collect_system(ode, build_ansatz(balance_number(ode)));
  }();
  return system;
}

double residual_norm(const AlgebraicSystem& system, const Binding& fixed, double eta,
                     std::span<const double> a) {
  BasicBinding<long double> b;
  for (std::uint32_t id = 0; id < Symbol::kFirstCoefficient; ++id) {
    b.set(Symbol{id}, static_cast<long double>(fixed.get(Symbol{id})));
  }
  b.set(Symbol::eta(), eta);
  for (std::size_t k = 0; k < a.size(); ++k) b.set(Symbol::a(static_cast<std::uint32_t>(k)), a[k]);
  long double worst = 0;
  for (const auto& eq : system.equations) worst = std::max(worst, std::fabs(evaluate(eq, b)));
  return static_cast<double>(worst);
}

std::array<ParamSet, 2> closed_form_parameter_sets(double B, double C, double n, double m, double alpha) {
  if (alpha == 0.0) throw Error(ErrorCode::AlphaZero, "alpha must be nonzero");
  if (B - C - 1.0 == 0.0) {
    throw Error(ErrorCode::DegenerateAmplitude, "B - C - 1 = 0 makes a2 vanish; both sets are degenerate");
  }
  Binding fixed;
  fixed.set(Symbol::B(), B).set(Symbol::C(), C).set(Symbol::n(), n).set(Symbol::m(), m).set(Symbol::alpha(), alpha);

  std::array<ParamSet, 2> sets;
  const SetTag tags[] = {SetTag::Set1, SetTag::Set2};
  for (int i = 0; i < 2; ++i) {
    const auto c = closed_form_set_coefficients<double>(tags[i], B, C, n, m, alpha);
    ParamSet& s = sets[i];
    s.set_tag = tags[i];
    s.eta = c.eta;
    s.a = {c.a0, c.a1, c.a2};
    s.residual_norm = residual_norm(bkp_system(), fixed, s.eta, s.a);
  }
  return sets;
}

}  // namespace sforge
