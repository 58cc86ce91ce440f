#pragma once

#include "sforge/param_poly.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace sforge {

/// Polynomial in the expansion variable phi = G'/(G'+G+A) with ParamPoly
/// coefficients; coefficient i multiplies phi^i.
class PhiPoly {
 public:
  PhiPoly() = default;
  PhiPoly(ParamPoly constant);  // NOLINT(implicit)
  explicit PhiPoly(std::vector<ParamPoly> coeffs);

  /// The monomial phi^k.
  static PhiPoly phi(std::uint32_t k = 1);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const ParamPoly& coeff(std::size_t i) const;
  const std::vector<ParamPoly>& coeffs() const { return coeffs_; }

  bool contains(Symbol s) const;

  PhiPoly pow(std::uint32_t k) const;

  /// phi^i coefficient by phi^i coefficient; zero coefficients are skipped.
  std::string to_string() const;

  PhiPoly operator-() const;
  PhiPoly& operator+=(const PhiPoly& o);
  PhiPoly& operator-=(const PhiPoly& o);

  friend PhiPoly operator+(PhiPoly a, const PhiPoly& b) { return a += b; }
  friend PhiPoly operator-(PhiPoly a, const PhiPoly& b) { return a -= b; }
  friend PhiPoly operator*(const PhiPoly& a, const PhiPoly& b);
  friend PhiPoly operator*(const PhiPoly& a, const ParamPoly& s);
  friend PhiPoly operator*(const ParamPoly& s, const PhiPoly& a) { return a * s; }

  friend bool operator==(const PhiPoly&, const PhiPoly&) = default;

 private:
  void trim();
  std::vector<ParamPoly> coeffs_;
};

PhiPoly poly_add(const PhiPoly& p, const PhiPoly& q);
PhiPoly poly_mul(const PhiPoly& p, const PhiPoly& q);
PhiPoly poly_scale(const PhiPoly& p, const ParamPoly& s);

/// dphi/dxi as a polynomial in phi, obtained from G'' + B G' + C G + A C = 0:
///   dphi/dxi = -C + (2C - B) phi + (B - C - 1) phi^2.
/// A shifts G by a constant and drops out.
PhiPoly phi_derivative_rule();

/// k-fold d/dxi, applying the chain rule with phi_derivative_rule().
PhiPoly differentiate(const PhiPoly& p, unsigned order);

/// Numeric coefficients c_i of phi^i under a binding.
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> to_numeric(const PhiPoly& p,
                                                    const BasicBinding<Scalar>& binding) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> c(p.coeffs().size());
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i] = evaluate(p.coeffs()[i], binding);
  return c;
}

/// Horner evaluation of numeric phi-coefficients.
template <class Derived>
typename Derived::Scalar horner(const Eigen::MatrixBase<Derived>& coeffs,
                                typename Derived::Scalar phi) {
  typename Derived::Scalar acc(0);
  for (Eigen::Index i = coeffs.size() - 1; i >= 0; --i) acc = acc * phi + coeffs[i];
  return acc;
}

}  // namespace sforge
