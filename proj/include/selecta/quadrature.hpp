#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "selecta/errors.hpp"

namespace selecta {

inline constexpr double kDefaultQuadTolerance = 1e-9;
inline constexpr long kQuadMaxPanels = 200000;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long panels = 0;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae on [-1, 1] (positive half, descending) and
// weights. Odd-indexed Kronrod nodes coincide with the 7-point Gauss nodes.
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

struct PanelEstimate {
  double kronrod;
  double error;
};

template <class F>
PanelEstimate gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::fabs(kronrod - gauss)};
}

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel make_panel(F& f, double a, double b) {
  const PanelEstimate est = gauss_kronrod_15(f, a, b);
  if (!std::isfinite(est.kronrod))
    throw QuadratureError("non-finite integrand on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
  return {a, b, est.kronrod, est.error};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature: the panel with the largest
/// |K15 - G7| is bisected until the summed error is within `tol`. Throws
/// QuadratureError when the panel budget is exhausted or a panel can no
/// longer be split in double precision.
template <class F>
QuadratureResult integrate_detailed(F&& f, double a, double b,
                                    double tol = kDefaultQuadTolerance) {
  if (!(a <= b)) throw DomainError("bounds", "integrate requires a <= b");
  if (!(tol > 0.0)) throw DomainError("tol", "must be > 0");
  QuadratureResult acc;
  if (a == b) return acc;
  std::priority_queue<detail::Panel> heap;
  heap.push(detail::make_panel(f, a, b));
  acc.panels = 1;
  double error = heap.top().error;
  while (error > tol) {
    const detail::Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b))
      throw QuadratureError("quadrature cannot resolve the integrand near x=" +
                            std::to_string(worst.a));
    if ((acc.panels += 2) > kQuadMaxPanels)
      throw QuadratureError("quadrature panel budget exhausted");
    heap.pop();
    const detail::Panel left = detail::make_panel(f, worst.a, mid);
    const detail::Panel right = detail::make_panel(f, mid, worst.b);
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Sum in a fixed order so the result does not depend on heap layout.
  std::vector<detail::Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
  for (const auto& p : panels) {
    acc.value += p.value;
    acc.error_estimate += p.error;
  }
  return acc;
}

template <class F>
double integrate(F&& f, double a, double b, double tol = kDefaultQuadTolerance) {
  return integrate_detailed(std::forward<F>(f), a, b, tol).value;
}

}  // namespace selecta
