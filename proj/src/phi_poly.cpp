#include "sforge/phi_poly.hpp"

#include <algorithm>

namespace sforge {

namespace {
const ParamPoly kZero{};
}  // namespace

PhiPoly::PhiPoly(ParamPoly constant) : coeffs_{std::move(constant)} { trim(); }

PhiPoly::PhiPoly(std::vector<ParamPoly> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

PhiPoly PhiPoly::phi(std::uint32_t k) {
  std::vector<ParamPoly> c(k + 1);
  c[k] = ParamPoly(1);
  return PhiPoly(std::move(c));
}

const ParamPoly& PhiPoly::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

bool PhiPoly::contains(Symbol s) const {
  return std::any_of(coeffs_.begin(), coeffs_.end(), [s](const ParamPoly& c) { return c.contains(s); });
}

void PhiPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

PhiPoly PhiPoly::pow(std::uint32_t k) const {
  PhiPoly result(ParamPoly(1));
  for (std::uint32_t i = 0; i < k; ++i) result = result * *this;
  return result;
}

std::string PhiPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + coeffs_[i].to_string() + ")";
    if (i == 1) out += "*phi";
    else if (i > 1) out += "*phi^" + std::to_string(i);
  }
  return out;
}

PhiPoly PhiPoly::operator-() const {
  PhiPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

PhiPoly& PhiPoly::operator+=(const PhiPoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

PhiPoly& PhiPoly::operator-=(const PhiPoly& o) { return *this += -o; }

PhiPoly operator*(const PhiPoly& a, const PhiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<ParamPoly> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return PhiPoly(std::move(c));
}

PhiPoly operator*(const PhiPoly& a, const ParamPoly& s) {
  std::vector<ParamPoly> c;
  c.reserve(a.coeffs_.size());
  for (const auto& x : a.coeffs_) c.push_back(x * s);
  return PhiPoly(std::move(c));
}

PhiPoly poly_add(const PhiPoly& p, const PhiPoly& q) { return p + q; }
PhiPoly poly_mul(const PhiPoly& p, const PhiPoly& q) { return p * q; }
PhiPoly poly_scale(const PhiPoly& p, const ParamPoly& s) { return p * s; }

PhiPoly phi_derivative_rule() {
  const ParamPoly B(Symbol::B());
  const ParamPoly C(Symbol::C());
  return PhiPoly({-C, 2 * C - B, B - C - 1});
}

PhiPoly differentiate(const PhiPoly& p, unsigned order) {
  static const PhiPoly rule = phi_derivative_rule();
  PhiPoly current = p;
  for (unsigned k = 0; k < order; ++k) {
    // d/dxi sum c_i phi^i = (sum i c_i phi^(i-1)) * dphi/dxi
    std::vector<ParamPoly> dp;
    for (std::size_t i = 1; i < current.coeffs().size(); ++i) {
      dp.push_back(current.coeffs()[i] * ParamPoly(static_cast<std::int64_t>(i)));
    }
    current = PhiPoly(std::move(dp)) * rule;
  }
  return current;
}

}  // namespace sforge
