#pragma once

#include "sforge/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sforge {

/// A symbol of the coefficient ring. The order is fixed:
/// A, B, C, n, m, alpha, eta, a0, a1, ... and is what canonical printing uses.
struct Symbol {
  std::uint32_t id = 0;

  static constexpr Symbol A() { return {0}; }
  static constexpr Symbol B() { return {1}; }
  static constexpr Symbol C() { return {2}; }
  static constexpr Symbol n() { return {3}; }
  static constexpr Symbol m() { return {4}; }
  static constexpr Symbol alpha() { return {5}; }
  static constexpr Symbol eta() { return {6}; }
  static constexpr Symbol a(std::uint32_t k) { return {7 + k}; }

  static constexpr std::uint32_t kFirstCoefficient = 7;

  bool is_coefficient() const { return id >= kFirstCoefficient; }
  std::uint32_t coefficient_index() const { return id - kFirstCoefficient; }

  std::string name() const;
  static std::optional<Symbol> from_name(std::string_view name);

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// Exponent vector indexed by Symbol::id, trailing zeros trimmed.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(Symbol s, std::uint32_t power = 1);

  std::uint32_t exponent(Symbol s) const {
    return s.id < exps_.size() ? exps_[s.id] : 0;
  }
  std::uint32_t total_degree() const;
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  bool is_one() const { return exps_.empty(); }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Lowers the exponent of `s` by one; requires exponent(s) > 0.
  Monomial without_one(Symbol s) const;

  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  void trim();
  std::vector<std::uint32_t> exps_;
};

/// Graded order: higher total degree first, then lexicographically larger
/// exponent vectors first. Iterating a ParamPoly yields its canonical order.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Multivariate polynomial over the rationals in the fixed symbol list.
class ParamPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  ParamPoly() = default;
  ParamPoly(Rational constant);  // NOLINT(implicit)
  ParamPoly(std::int64_t constant) : ParamPoly(Rational(constant)) {}  // NOLINT(implicit)
  ParamPoly(Symbol s);  // NOLINT(implicit)
  ParamPoly(const Rational& coefficient, const Monomial& monomial);

  /// Parses the canonical text format (and any expanded sum of products,
  /// with optional parentheses) back into a polynomial.
  static ParamPoly parse(std::string_view text);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }
  bool contains(Symbol s) const;
  std::uint32_t degree_in(Symbol s) const;
  /// Largest symbol id present plus one, 0 for constants.
  std::uint32_t symbol_span() const;

  ParamPoly derivative(Symbol s) const;
  ParamPoly substitute(Symbol s, const ParamPoly& value) const;
  ParamPoly pow(std::uint32_t k) const;

  template <class Scalar>
  Scalar evaluate(std::span<const Scalar> values) const;

  std::string to_string() const;

  ParamPoly operator-() const;
  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  ParamPoly& operator*=(const ParamPoly& o);

  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);

  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Monomial& mono, const Rational& coefficient);
  TermMap terms_;
};

/// Numeric values for the symbols, indexed by Symbol::id. Unbound symbols
/// evaluate to zero.
template <class Scalar>
class BasicBinding {
 public:
  BasicBinding& set(Symbol s, Scalar v) {
    if (values_.size() <= s.id) values_.resize(s.id + 1, Scalar(0));
    values_[s.id] = v;
    return *this;
  }
  Scalar get(Symbol s) const { return s.id < values_.size() ? values_[s.id] : Scalar(0); }
  bool covers(std::uint32_t span) const { return values_.size() >= span; }
  void reserve_span(std::uint32_t span) {
    if (values_.size() < span) values_.resize(span, Scalar(0));
  }
  std::span<const Scalar> values() const { return values_; }

 private:
  std::vector<Scalar> values_;
};

using Binding = BasicBinding<double>;

template <class Scalar>
Scalar evaluate(const ParamPoly& p, BasicBinding<Scalar> binding) {
  binding.reserve_span(p.symbol_span());
  return p.evaluate<Scalar>(binding.values());
}

template <class Scalar>
Scalar ParamPoly::evaluate(std::span<const Scalar> values) const {
  Scalar sum(0);
  for (const auto& [mono, coef] : terms_) {
    Scalar term = coef.template to<Scalar>();
    const auto& e = mono.exponents();
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) term *= values[i];
    }
    sum += term;
  }
  return sum;
}

}  // namespace sforge
