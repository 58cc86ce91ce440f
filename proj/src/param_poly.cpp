#include "sforge/param_poly.hpp"

#include "sforge/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace sforge {

namespace {

constexpr std::string_view kFixedNames[] = {"A", "B", "C", "n", "m", "alpha", "eta"};

}  // namespace

std::string Symbol::name() const {
  if (id < kFirstCoefficient) return std::string(kFixedNames[id]);
  return "a" + std::to_string(coefficient_index());
}

std::optional<Symbol> Symbol::from_name(std::string_view name) {
  for (std::uint32_t i = 0; i < kFirstCoefficient; ++i) {
    if (kFixedNames[i] == name) return Symbol{i};
  }
  if (name.size() >= 2 && name.front() == 'a') {
    std::uint32_t k = 0;
    for (char c : name.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      k = k * 10 + static_cast<std::uint32_t>(c - '0');
    }
    if (name.size() > 2 && name[1] == '0') return std::nullopt;
    return Symbol::a(k);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(Symbol s, std::uint32_t power) {
  if (power == 0) return;
  exps_.assign(s.id + 1, 0);
  exps_[s.id] = power;
}

std::uint32_t Monomial::total_degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.exps_.assign(std::max(a.exps_.size(), b.exps_.size()), 0);
  for (std::size_t i = 0; i < a.exps_.size(); ++i) r.exps_[i] += a.exps_[i];
  for (std::size_t i = 0; i < b.exps_.size(); ++i) r.exps_[i] += b.exps_[i];
  return r;
}

Monomial Monomial::without_one(Symbol s) const {
  Monomial r = *this;
  --r.exps_[s.id];
  r.trim();
  return r;
}

void Monomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

std::string Monomial::to_string() const {
  std::string out;
  for (std::uint32_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += Symbol{i}.name();
    if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
  }
  return out;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = a.total_degree();
  const auto db = b.total_degree();
  if (da != db) return da > db;
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  const std::size_t len = std::max(ea.size(), eb.size());
  for (std::size_t i = 0; i < len; ++i) {
    const auto x = i < ea.size() ? ea[i] : 0u;
    const auto y = i < eb.size() ? eb[i] : 0u;
    if (x != y) return x > y;
  }
  return false;
}

// ---------------------------------------------------------------------------
// ParamPoly

ParamPoly::ParamPoly(Rational constant) { add_term(Monomial{}, constant); }

ParamPoly::ParamPoly(Symbol s) { add_term(Monomial(s), Rational(1)); }

ParamPoly::ParamPoly(const Rational& coefficient, const Monomial& monomial) {
  add_term(monomial, coefficient);
}

void ParamPoly::add_term(const Monomial& mono, const Rational& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mono, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool ParamPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

bool ParamPoly::contains(Symbol s) const { return degree_in(s) > 0; }

std::uint32_t ParamPoly::degree_in(Symbol s) const {
  std::uint32_t d = 0;
  for (const auto& [mono, coef] : terms_) d = std::max(d, mono.exponent(s));
  return d;
}

std::uint32_t ParamPoly::symbol_span() const {
  std::size_t span = 0;
  for (const auto& [mono, coef] : terms_) span = std::max(span, mono.exponents().size());
  return static_cast<std::uint32_t>(span);
}

ParamPoly ParamPoly::derivative(Symbol s) const {
  ParamPoly r;
  for (const auto& [mono, coef] : terms_) {
    const auto e = mono.exponent(s);
    if (e == 0) continue;
    r.add_term(mono.without_one(s), coef * Rational(static_cast<std::int64_t>(e)));
  }
  return r;
}

ParamPoly ParamPoly::substitute(Symbol s, const ParamPoly& value) const {
  ParamPoly r;
  for (const auto& [mono, coef] : terms_) {
    const auto e = mono.exponent(s);
    Monomial rest = mono;
    for (std::uint32_t k = 0; k < e; ++k) rest = rest.without_one(s);
    r += ParamPoly(coef, rest) * value.pow(e);
  }
  return r;
}

ParamPoly ParamPoly::pow(std::uint32_t k) const {
  ParamPoly result(1);
  ParamPoly base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return result;
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly r = *this;
  for (auto& [mono, coef] : r.terms_) coef = -coef;
  return r;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  for (const auto& [mono, coef] : o.terms_) add_term(mono, coef);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  for (const auto& [mono, coef] : o.terms_) add_term(mono, -coef);
  return *this;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

ParamPoly& ParamPoly::operator*=(const ParamPoly& o) { return *this = *this * o; }

std::string ParamPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, coef] : terms_) {
    const bool negative = coef.sign() < 0;
    const Rational magnitude = negative ? -coef : coef;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (mono.is_one()) {
      out += magnitude.to_string();
    } else if (magnitude.is_one()) {
      out += mono.to_string();
    } else {
      out += magnitude.to_string() + "*" + mono.to_string();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser: expr := ['+'|'-'] term (('+'|'-') term)*
//         term := factor ('*' factor)*
//         factor := (integer ['/' integer] | symbol | '(' expr ')') ['^' integer]

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParamPoly parse_all() {
    ParamPoly p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError,
                why + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view take_while(auto pred) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && pred(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  ParamPoly expr() {
    ParamPoly sum;
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    ParamPoly t = term();
    sum += negate ? -t : t;
    for (;;) {
      if (accept('+')) sum += term();
      else if (accept('-')) sum -= term();
      else break;
    }
    return sum;
  }

  ParamPoly term() {
    ParamPoly prod = factor();
    while (accept('*')) prod *= factor();
    return prod;
  }

  ParamPoly factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected a factor");
    ParamPoly base;
    const unsigned char c = static_cast<unsigned char>(text_[pos_]);
    if (c == '(') {
      ++pos_;
      base = expr();
      if (!accept(')')) fail("expected ')'");
    } else if (std::isdigit(c)) {
      std::string literal(take_while([](unsigned char ch) { return std::isdigit(ch) != 0; }));
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_space();
        literal += "/";
        literal += take_while([](unsigned char ch) { return std::isdigit(ch) != 0; });
      }
      base = ParamPoly(Rational::parse(literal));
    } else if (std::isalpha(c)) {
      const auto name = take_while([](unsigned char ch) { return std::isalnum(ch) != 0 || ch == '_'; });
      const auto sym = Symbol::from_name(name);
      if (!sym) fail("unknown symbol '" + std::string(name) + "'");
      base = ParamPoly(*sym);
    } else {
      fail("unexpected character");
    }
    if (accept('^')) {
      skip_space();
      const auto digits = take_while([](unsigned char ch) { return std::isdigit(ch) != 0; });
      if (digits.empty()) fail("expected exponent");
      base = base.pow(static_cast<std::uint32_t>(std::stoul(std::string(digits))));
    }
    return base;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParamPoly ParamPoly::parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace sforge
