#pragma once

#include "sforge/param_poly.hpp"

#include <string>
#include <vector>

namespace sforge {

/// (d^order U / dxi^order)^power
struct Factor {
  unsigned order = 0;
  unsigned power = 1;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// coefficient * prod(factors)
struct OdeTerm {
  ParamPoly coefficient;
  std::vector<Factor> factors;

  /// Sum of powers: 1 for a linear term.
  unsigned total_power() const;
  /// Sum of power * order.
  unsigned derivative_weight() const;
};

/// Polynomial ODE in U(xi) and its derivatives, equal to zero.
class ReducedODE {
 public:
  /// Throws InvalidInput for an empty term list, a zero coefficient, or a
  /// term without factors.
  explicit ReducedODE(std::vector<OdeTerm> terms);

  const std::vector<OdeTerm>& terms() const { return terms_; }

  std::string to_string() const;

 private:
  std::vector<OdeTerm> terms_;
};

/// n^3 m U'' + alpha n^2 m U^2 + eta U = 0
ReducedODE bkp_reduced_ode();

/// n^3 m U''' + 2 alpha n^2 m U U' + eta U' = 0, the undifferentiated form.
ReducedODE bkp_third_order_ode();

}  // namespace sforge
