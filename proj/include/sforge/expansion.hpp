#pragma once

#include "sforge/errors.hpp"
#include "sforge/param_poly.hpp"
#include "sforge/phi_poly.hpp"
#include "sforge/reduced_ode.hpp"

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sforge {

enum class SetTag { Set1, Set2, Numeric };

constexpr std::string_view to_string(SetTag tag) {
  switch (tag) {
    case SetTag::Set1: return "SET1";
    case SetTag::Set2: return "SET2";
    case SetTag::Numeric: return "NUMERIC";
  }
  return "?";
}

/// One equation per power of phi (phi^0 first); every equation must vanish.
struct AlgebraicSystem {
  std::vector<ParamPoly> equations;
  std::vector<Symbol> unknowns;

  /// "[phi^k] <canonical poly> = 0", one line per equation.
  std::string to_string() const;
};

/// A solved coefficient family.
struct ParamSet {
  double eta = 0;
  std::vector<double> a;
  SetTag set_tag = SetTag::Numeric;
  double residual_norm = 0;
};

/// Homogeneous balance: equates N + k of the highest-order linear derivative
/// term with p N + w of the strongest nonlinear term.
unsigned balance_number(const ReducedODE& ode);

/// a0 + a1 phi + ... + aN phi^N
PhiPoly build_ansatz(unsigned degree);

/// Substitutes the ansatz into the ODE and returns the phi-power coefficients.
/// Unknowns are the ansatz coefficients, plus eta when it occurs.
AlgebraicSystem collect_system(const ReducedODE& ode, const PhiPoly& ansatz);

/// The collected system of bkp_reduced_ode() with the balanced ansatz, built once.
const AlgebraicSystem& bkp_system();

/// max |equation_i| evaluated in extended precision. `fixed` supplies every
/// non-unknown symbol.
double residual_norm(const AlgebraicSystem& system, const Binding& fixed, double eta,
                     std::span<const double> a);

template <class Scalar>
struct SetCoefficients {
  Scalar eta;
  Scalar a0;
  Scalar a1;
  Scalar a2;
};

/// The two closed-form coefficient families of the balanced BKP ansatz.
/// Both share a1 and a2; eta flips sign between them.
template <class Scalar>
SetCoefficients<Scalar> closed_form_set_coefficients(SetTag tag, Scalar B, Scalar C, Scalar n, Scalar m,
                                                     Scalar alpha) {
  if (alpha == Scalar(0)) throw Error(ErrorCode::AlphaZero, "alpha must be nonzero");
  if (tag == SetTag::Numeric) throw Error(ErrorCode::InvalidInput, "no closed form for NUMERIC sets");
  const Scalar n3m = n * n * n * m;
  SetCoefficients<Scalar> s{};
  s.a1 = Scalar(6) * (B * B * n - Scalar(3) * B * C * n - B * n + Scalar(2) * C * C * n + Scalar(2) * C * n) / alpha;
  s.a2 = -Scalar(6) * n * (B - C - Scalar(1)) * (B - C - Scalar(1)) / alpha;
  if (tag == SetTag::Set1) {
    s.eta = Scalar(4) * C * n3m - B * B * n3m;
    s.a0 = -Scalar(6) * C * n * (-B + C + Scalar(1)) / alpha;
  } else {
    s.eta = n3m * (B * B - Scalar(4) * C);
    s.a0 = (-B * B * n + Scalar(6) * B * C * n - Scalar(6) * C * C * n - Scalar(2) * C * n) / alpha;
  }
  return s;
}

/// SET-1 and SET-2 at numeric parameters, each with its residual in
/// bkp_system(). Throws AlphaZero, or DegenerateAmplitude when B - C - 1 = 0.
std::array<ParamSet, 2> closed_form_parameter_sets(double B, double C, double n, double m, double alpha);

/// Inverts eta = -(2n^2 + m^2 + 2np + mp). Throws DegenerateDirection for 2n + m = 0.
template <class Scalar>
Scalar p_from_eta(Scalar eta, Scalar n, Scalar m) {
  const Scalar direction = Scalar(2) * n + m;
  if (direction == Scalar(0)) throw Error(ErrorCode::DegenerateDirection, "2n + m = 0 leaves p undetermined");
  return -(eta + Scalar(2) * n * n + m * m) / direction;
}

template <class Scalar>
Scalar eta_from_p(Scalar p, Scalar n, Scalar m) {
  return -(Scalar(2) * n * n + m * m + Scalar(2) * n * p + m * p);
}

}  // namespace sforge
