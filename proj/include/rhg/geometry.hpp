#pragma once

#include <cmath>
#include <utility>

#include "rhg/core.hpp"

namespace rhg {

/// Per-node quantities reused by the connection predicate. Building a key is
/// the only place the predicate's transcendental inputs are computed, so every
/// caller (pairwise test, naive builder, fast builder) sees identical bits.
struct NodeKey {
  double sinh_r = 0.0;
  double exp_r = 1.0;
  double exp_neg_r = 1.0;
  double sin_half = 0.0;  // sin(theta / 2)
  double cos_half = 1.0;  // cos(theta / 2)
};

inline NodeKey make_key(const PolarPoint& p) {
  return {std::sinh(p.r), std::exp(p.r), std::exp(-p.r), std::sin(0.5 * p.theta),
          std::cos(0.5 * p.theta)};
}

namespace detail {

/// cosh(d) = cosh(r - s) + 2 sinh(r) sinh(s) sin^2((theta_r - theta_s) / 2).
/// Both terms are non-negative, so the sum carries full relative precision.
/// Every operation is either commutative or flips sign exactly under a swap of
/// the arguments, so the result is bitwise symmetric.
inline double cosh_distance(const NodeKey& a, const NodeKey& b) {
  const double cosh_diff = 0.5 * (a.exp_r * b.exp_neg_r + a.exp_neg_r * b.exp_r);
  const double s = a.sin_half * b.cos_half - a.cos_half * b.sin_half;
  return cosh_diff + 2.0 * a.sinh_r * b.sinh_r * s * s;
}

/// Half-angle of the connection set at radius y around (r, 0), given the
/// offset t = r + y - R computed by the caller (possibly exactly, e.g. as u^2
/// after a substitution). Uses tan(theta / 2) = sqrt((1 - c) / (1 + c)) with
/// both factors written as products of sinh, which avoids the cancellation in
/// cosh(r) cosh(y) - cosh(R).
inline double theta_from_offset(double r, double y, double t, double R) {
  if (t <= 0.0) return pi;
  const double far = R + r - y;
  if (far <= 0.0) return 0.0;
  const double log_ratio = log_sinh(0.5 * far) + log_sinh(0.5 * (R - r + y)) -
                           log_sinh(0.5 * (r + y + R)) - log_sinh(0.5 * t);
  return 2.0 * std::atan(std::exp(0.5 * log_ratio));
}

}  // namespace detail

/// Hyperbolic distance from the law of cosines, evaluated as
/// 2 asinh(sqrt(sinh^2((r - s) / 2) + sinh(r) sinh(s) sin^2(dtheta / 2))).
inline double hyperbolic_distance(const PolarPoint& x, const PolarPoint& y) {
  const bool swap = y.r < x.r || (y.r == x.r && y.theta < x.theta);
  const PolarPoint& a = swap ? y : x;
  const PolarPoint& b = swap ? x : y;
  const double h = std::sinh(0.5 * (a.r - b.r));
  const double s = std::sin(0.5 * (a.theta - b.theta));
  const double q = h * h + std::sinh(a.r) * std::sinh(b.r) * s * s;
  return 2.0 * std::asinh(std::sqrt(q));
}

/// Connection predicate on precomputed keys: cosh(d) <= cosh(R_n).
inline bool is_connected(const NodeKey& x, const NodeKey& y, const ModelParams& params) {
  return detail::cosh_distance(x, y) <= params.cosh_r_max();
}

/// True iff the hyperbolic distance is at most R_n (boundary counts as connected).
inline bool is_connected(const PolarPoint& x, const PolarPoint& y, const ModelParams& params) {
  return is_connected(make_key(x), make_key(y), params);
}

/// Half-angle theta_r(y) of the set of angles at radius y that lie within
/// distance R_n of the point (r, 0). Equals pi when y <= R_n - r.
inline double theta_max(double r, double y, const ModelParams& params) {
  const double R = params.r_max();
  if (!(r >= 0.0 && r < R)) throw DomainError("theta_max: r must lie in [0, R_n)");
  if (!(y >= 0.0 && y < R)) throw DomainError("theta_max: y must lie in [0, R_n)");
  return detail::theta_from_offset(r, y, r + y - R, R);
}

/// Leading-order estimate 2 exp((R_n - r - y) / 2) of theta_r(y), valid for y >= R_n - r.
inline double theta_max_estimate(double r, double y, const ModelParams& params) {
  const double gap = params.r_max() - r - y;
  if (!(gap <= 0.0)) throw DomainError("theta_max_estimate: requires y >= R_n - r");
  return 2.0 * std::exp(0.5 * gap);
}

}  // namespace rhg
