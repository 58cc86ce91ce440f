#include "oracles.hpp"

#include "sforge/expansion.hpp"
#include "sforge/solver.hpp"

#include <doctest.h>

using namespace sforge;

namespace {

std::map<Symbol, double> fixed(double B, double C, double n, double m, double alpha) {
  return {{Symbol::B(), B}, {Symbol::C(), C}, {Symbol::n(), n}, {Symbol::m(), m}, {Symbol::alpha(), alpha}};
}

bool contains(const std::vector<ParamSet>& found, const ParamSet& want, double tol) {
  for (const auto& s : found) {
    if (set_distance(s, want) < tol) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("solver recovers both sets at the first figure's parameters") {
  const auto found = solve_system(bkp_system(), fixed(1, 0.1, 1, 1, 1));
  const auto known = closed_form_parameter_sets(1, 0.1, 1, 1, 1);
  CHECK(found.size() >= 2);
  CHECK(contains(found, known[0], 1e-8));
  CHECK(contains(found, known[1], 1e-8));
  for (const auto& s : found) {
    CHECK(s.set_tag == SetTag::Numeric);
    CHECK(s.residual_norm < 1e-10);
    CHECK(std::fabs(s.a.back()) > 1e-9);
  }
}

TEST_CASE("B=3, C=1: SET1 is a0=6, a1=6, a2=-6, eta=-5") {
  const auto found = solve_system(bkp_system(), fixed(3, 1, 1, 1, 1));
  ParamSet want;
  want.eta = -5;
  want.a = {6, 6, -6};
  CHECK(contains(found, want, 1e-8));
}

TEST_CASE("results are sorted, distinct and reproducible") {
  SolveOptions opts;
  opts.rng_seed = 99;
  const auto a = solve_system(bkp_system(), fixed(0.5, -0.3, 1.2, 0.8, -1.5), opts);
  const auto b = solve_system(bkp_system(), fixed(0.5, -0.3, 1.2, 0.8, -1.5), opts);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].eta == b[i].eta);
    CHECK(a[i].a == b[i].a);
  }
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    CHECK(set_distance(a[i], a[i + 1]) >= 1e-6);
    CHECK(a[i].a <= a[i + 1].a);
  }
}

TEST_CASE("an N=1 ansatz has no non-degenerate root") {
  // With a2 absent the phi^2 equation forces a1 = 0, which the degeneracy
  // gate rejects.
  const auto sys = collect_system(bkp_reduced_ode(), build_ansatz(1));
  try {
    solve_system(sys, fixed(1, 0.1, 1, 1, 1));
    FAIL("expected NoSolutionFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSolutionFound);
  }
}

TEST_CASE("unbound symbols are rejected") {
  CHECK_THROWS_AS(solve_system(bkp_system(), {{Symbol::B(), 1.0}}), Error);
}

TEST_CASE("property: recovery at random parameter points") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 8; ++i) {
    const auto d = oracle::draw_params(rng);
    const auto found = solve_system(bkp_system(), fixed(d.B, d.C, d.n, d.m, d.alpha));
    const auto known = closed_form_parameter_sets(d.B, d.C, d.n, d.m, d.alpha);
    CHECK(contains(found, known[0], 1e-8));
    CHECK(contains(found, known[1], 1e-8));
  }
}
