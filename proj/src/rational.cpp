#include "sforge/rational.hpp"

#include "sforge/errors.hpp"

#include <cctype>

namespace sforge {

namespace {

Rational::Integer parse_integer(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty integer literal");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error(ErrorCode::ParseError, "bad integer literal '" + std::string(text) + "'");
  }
  return Rational::Integer(std::string(text));
}

}  // namespace

Rational::Rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
  value_ = denominator < 0 ? Value(-numerator, -denominator) : Value(numerator, denominator);
}

Rational Rational::parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto slash = text.find('/');
  Rational r;
  if (slash == std::string_view::npos) {
    r = Rational(parse_integer(text), Integer(1));
  } else {
    r = Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
  }
  return negative ? -r : r;
}

Rational::Integer Rational::numerator() const {
  return boost::multiprecision::numerator(value_);
}

Rational::Integer Rational::denominator() const {
  return boost::multiprecision::denominator(value_);
}

std::string Rational::to_string() const {
  std::string s = numerator().str();
  const Integer den = denominator();
  if (den != 1) s += "/" + den.str();
  return s;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidInput, "division by zero");
  value_ /= o.value_;
  return *this;
}

}  // namespace sforge
