#include "sforge/reduced_ode.hpp"

#include "sforge/errors.hpp"

namespace sforge {

unsigned OdeTerm::total_power() const {
  unsigned s = 0;
  for (const auto& f : factors) s += f.power;
  return s;
}

unsigned OdeTerm::derivative_weight() const {
  unsigned s = 0;
  for (const auto& f : factors) s += f.power * f.order;
  return s;
}

ReducedODE::ReducedODE(std::vector<OdeTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw Error(ErrorCode::InvalidInput, "reduced ODE needs at least one term");
  for (const auto& t : terms_) {
    if (t.coefficient.is_zero()) throw Error(ErrorCode::InvalidInput, "reduced ODE term with zero coefficient");
    if (t.factors.empty()) throw Error(ErrorCode::InvalidInput, "reduced ODE term without U factor");
    for (const auto& f : t.factors) {
      if (f.power == 0) throw Error(ErrorCode::InvalidInput, "factor power must be >= 1");
    }
  }
}

std::string ReducedODE::to_string() const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + t.coefficient.to_string() + ")";
    for (const auto& f : t.factors) {
      out += "*U";
      if (f.order > 0) out += "[" + std::to_string(f.order) + "]";
      if (f.power > 1) out += "^" + std::to_string(f.power);
    }
  }
  return out + " = 0";
}

ReducedODE bkp_reduced_ode() {
  const ParamPoly n(Symbol::n()), m(Symbol::m()), alpha(Symbol::alpha()), eta(Symbol::eta());
  return ReducedODE({
      {n.pow(3) * m, {{2, 1}}},
      {alpha * n.pow(2) * m, {{0, 2}}},
      {eta, {{0, 1}}},
  });
}

ReducedODE bkp_third_order_ode() {
  const ParamPoly n(Symbol::n()), m(Symbol::m()), alpha(Symbol::alpha()), eta(Symbol::eta());
  return ReducedODE({
      {n.pow(3) * m, {{3, 1}}},
      {2 * alpha * n.pow(2) * m, {{0, 1}, {1, 1}}},
      {eta, {{1, 1}}},
  });
}

}  // namespace sforge
