#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "rhg/core.hpp"

namespace rhg {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 60;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  double magnitude = 0.0;  // integral of |f|

  friend bool operator<(const Panel& x, const Panel& y) { return x.error < y.error; }
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 15> fv{};
  const double fc = f(center);
  fv[14] = fc;
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    kronrod += kronrod_weights[j] * (f1 + f2);
    abs_sum += kronrod_weights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += gauss_weights[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * kronrod;
  double asc = kronrod_weights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    asc += kronrod_weights[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));

  const double scale = std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  asc *= scale;
  abs_sum *= scale;
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * abs_sum, err);
  return {a, b, kronrod * half, err, abs_sum};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of f over [a, b]. The panel with
/// the largest error estimate is bisected until the total estimate drops below
/// max(abs_tol, rel_tol * |integral|), or until it reaches the rounding floor
/// 100 eps int |f| where no further bisection can help. Throws QuadratureError when that takes
/// more than q.max_subdivisions bisections or the integrand is not finite.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureConfig& q = {}) {
  if (!(q.rel_tol > 0.0) || !(q.abs_tol > 0.0))
    throw DomainError("quadrature tolerances must be positive");
  if (a == b) return {};

  std::priority_queue<detail::Panel> panels;
  auto first = detail::gauss_kronrod_15(f, a, b);
  double total = first.value;
  double error = first.error;
  double magnitude = first.magnitude;
  panels.push(first);

  constexpr double roundoff = 100.0 * std::numeric_limits<double>::epsilon();
  int subdivisions = 0;
  while (error > std::max({q.abs_tol, q.rel_tol * std::abs(total), roundoff * magnitude})) {
    if (!std::isfinite(total) || !std::isfinite(error))
      throw QuadratureError("quadrature: non-finite integrand value");
    if (subdivisions >= q.max_subdivisions)
      throw QuadratureError("quadrature: tolerance not met within " +
                            std::to_string(q.max_subdivisions) + " subdivisions");
    const detail::Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    panels.push(left);
    panels.push(right);
    ++subdivisions;

    // Re-sum from scratch so the totals do not accumulate drift.
    total = 0.0;
    error = 0.0;
    magnitude = 0.0;
    auto copy = panels;
    while (!copy.empty()) {
      total += copy.top().value;
      error += copy.top().error;
      magnitude += copy.top().magnitude;
      copy.pop();
    }
  }
  if (!std::isfinite(total)) throw QuadratureError("quadrature: non-finite integrand value");
  return {total, error, subdivisions};
}

}  // namespace rhg
