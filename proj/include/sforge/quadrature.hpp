#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <utility>

namespace sforge {

template <class Scalar>
struct QuadratureResult {
  Scalar value;
  Scalar error;
};

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss weights.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class Scalar, class F>
QuadratureResult<Scalar> gauss_kronrod_15(F& f, Scalar a, Scalar b) {
  const Scalar center = (a + b) / 2;
  const Scalar half = (b - a) / 2;
  const Scalar fc = f(center);
  Scalar kronrod = fc * Scalar(kKronrodWeights[7]);
  Scalar gauss = fc * Scalar(kGaussWeights[3]);
  for (int i = 0; i < 7; ++i) {
    const Scalar dx = half * Scalar(kKronrodNodes[i]);
    const Scalar s = f(center - dx) + f(center + dx);
    kronrod += Scalar(kKronrodWeights[i]) * s;
    if (i % 2 == 1) gauss += Scalar(kGaussWeights[i / 2]) * s;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G7/K15): the interval with the largest
/// error estimate is bisected until the total estimate drops below
/// max(abs_tol, rel_tol * |value|) or `max_intervals` is reached.
/// Reversed limits give the negated integral.
template <class Scalar, class F>
QuadratureResult<Scalar> integrate(F&& f, Scalar a, Scalar b, Scalar abs_tol = Scalar(1e-10),
                                   Scalar rel_tol = Scalar(1e-13), std::size_t max_intervals = 4000) {
  if (a == b) return {Scalar(0), Scalar(0)};
  if (b < a) {
    auto r = integrate(std::forward<F>(f), b, a, abs_tol, rel_tol, max_intervals);
    return {-r.value, r.error};
  }
  struct Piece {
    Scalar a, b;
    QuadratureResult<Scalar> r;
    bool operator<(const Piece& o) const { return r.error < o.r.error; }
  };
  std::priority_queue<Piece> heap;
  auto first = detail::gauss_kronrod_15(f, a, b);
  Scalar value = first.value, error = first.error;
  heap.push({a, b, first});
  while (heap.size() < max_intervals && std::isfinite(value) &&
         error > std::max(abs_tol, rel_tol * std::abs(value))) {
    const Piece worst = heap.top();
    const Scalar mid = (worst.a + worst.b) / 2;
    if (!(worst.a < mid && mid < worst.b)) break;
    heap.pop();
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    value += left.value + right.value - worst.r.value;
    error += left.error + right.error - worst.r.error;
    heap.push({worst.a, mid, left});
    heap.push({mid, worst.b, right});
  }
  // Re-sum to shed the drift of the running updates.
  value = error = 0;
  while (!heap.empty()) {
    value += heap.top().r.value;
    error += heap.top().r.error;
    heap.pop();
  }
  return {value, error};
}

}  // namespace sforge
