#include "sforge/errors.hpp"
#include "sforge/param_poly.hpp"
#include "sforge/rational.hpp"

#include <doctest.h>

#include <random>

using namespace sforge;

namespace {

ParamPoly random_poly(std::mt19937_64& rng, int max_terms = 6) {
  std::uniform_int_distribution<int> n_terms(0, max_terms), sym(0, 9), power(0, 3), num(-20, 20), den(1, 9);
  ParamPoly p;
  const int count = n_terms(rng);
  for (int t = 0; t < count; ++t) {
    ParamPoly term = Rational(num(rng), den(rng));
    const int factors = power(rng);
    for (int f = 0; f < factors; ++f) term *= ParamPoly(Symbol{static_cast<std::uint32_t>(sym(rng))}).pow(power(rng));
    p += term;
  }
  return p;
}

}  // namespace

TEST_CASE("rational arithmetic stays exact and reduced") {
  const Rational third(1, 3), sixth(1, 6);
  CHECK(third + sixth == Rational(1, 2));
  CHECK(Rational(-4, 6).to_string() == "-2/3");
  CHECK(Rational(4, -6) == Rational(-2, 3));
  CHECK(Rational(-4, -6).denominator() == 3);
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-7").to_string() == "-7");
  CHECK((third * 3).is_one());
  CHECK((Rational(1, 10) * 10 - 1).is_zero());
  CHECK(Rational(-3, 7) < Rational(-2, 7));
  CHECK_THROWS_AS(Rational(1, 0), Error);
  CHECK_THROWS_AS(third / Rational(0), Error);
  CHECK_THROWS_AS(Rational::parse("1/x"), Error);
}

TEST_CASE("symbol names round-trip") {
  for (std::uint32_t id = 0; id < 12; ++id) {
    const Symbol s{id};
    const auto back = Symbol::from_name(s.name());
    REQUIRE(back.has_value());
    CHECK(*back == s);
  }
  CHECK(Symbol::alpha().name() == "alpha");
  CHECK(Symbol::a(2).name() == "a2");
  CHECK_FALSE(Symbol::from_name("q").has_value());
}

TEST_CASE("ring identities on small examples") {
  const ParamPoly B = Symbol::B(), C = Symbol::C();
  CHECK((B + C).pow(2) == B * B + ParamPoly(2) * B * C + C * C);
  CHECK((B - B).is_zero());
  CHECK((B * 0).is_zero());
  CHECK(((B + 1) * (B - 1)).to_string() == "B^2 - 1");
  CHECK(ParamPoly(Rational(3, 2)) * B == ParamPoly::parse("3/2*B"));
  CHECK((ParamPoly(Rational(3, 2)) * B).to_string() == "3/2*B");
  CHECK(ParamPoly::parse("2*(B - C)") == ParamPoly(2) * B - ParamPoly(2) * C);
  CHECK(ParamPoly::parse("-(a0 - a1)^2") == -(ParamPoly(Symbol::a(0)) - Symbol::a(1)).pow(2));
  CHECK(ParamPoly().to_string() == "0");
}

TEST_CASE("canonical order puts higher degree first") {
  const auto p = ParamPoly::parse("1 + eta*a0 + B*C*n^3*m*a1 + alpha*a0^2*n^2*m");
  CHECK(p.to_string() == "B*C*n^3*m*a1 + n^2*m*alpha*a0^2 + eta*a0 + 1");
}

TEST_CASE("derivative, substitution and degree queries") {
  const auto p = ParamPoly::parse("B^3*C + 2*B*a1 - 5");
  CHECK(p.derivative(Symbol::B()) == ParamPoly::parse("3*B^2*C + 2*a1"));
  CHECK(p.derivative(Symbol::eta()).is_zero());
  CHECK(p.substitute(Symbol::B(), ParamPoly(2)) == ParamPoly::parse("8*C + 4*a1 - 5"));
  CHECK(p.substitute(Symbol::B(), ParamPoly::parse("C + 1")) == ParamPoly::parse("(C + 1)^3*C + 2*(C + 1)*a1 - 5"));
  CHECK(p.degree_in(Symbol::B()) == 3);
  CHECK(p.contains(Symbol::a(1)));
  CHECK_FALSE(p.contains(Symbol::A()));
  CHECK(p.symbol_span() == Symbol::a(1).id + 1);
}

TEST_CASE("numeric evaluation matches direct arithmetic") {
  const auto p = ParamPoly::parse("B^2*n - 3*B*C*n + 1/2*alpha*a2^2");
  Binding b;
  b.set(Symbol::B(), 1.5).set(Symbol::C(), -0.25).set(Symbol::n(), 2.0).set(Symbol::alpha(), 3.0).set(Symbol::a(2), 0.5);
  const double expect = 1.5 * 1.5 * 2.0 - 3 * 1.5 * -0.25 * 2.0 + 0.5 * 3.0 * 0.25;
  CHECK(evaluate(p, b) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("parse errors are reported") {
  CHECK_THROWS_AS(ParamPoly::parse("B +"), Error);
  CHECK_THROWS_AS(ParamPoly::parse("(B"), Error);
  CHECK_THROWS_AS(ParamPoly::parse("Q*B"), Error);
  CHECK_THROWS_AS(ParamPoly::parse("B^-1"), Error);
}

TEST_CASE("property: parse(print(p)) == p for random polynomials") {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 300; ++i) {
    const auto p = random_poly(rng);
    const auto text = p.to_string();
    INFO(text);
    CHECK(ParamPoly::parse(text) == p);
    CHECK(ParamPoly::parse(text).to_string() == text);
  }
}

TEST_CASE("property: commutative ring axioms") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_poly(rng, 4), q = random_poly(rng, 4), r = random_poly(rng, 4);
    CHECK(p * q == q * p);
    CHECK(p + q == q + p);
    CHECK(p * (q + r) == p * q + p * r);
    CHECK((p * q) * r == p * (q * r));
    CHECK((p - p).is_zero());
    CHECK((p * q).derivative(Symbol::B()) == p.derivative(Symbol::B()) * q + p * q.derivative(Symbol::B()));
  }
}
