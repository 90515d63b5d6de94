#pragma once

#include <cmath>

#include "rhg/core.hpp"
#include "rhg/geometry.hpp"
#include "rhg/quadrature.hpp"

// Measures of connection balls under the radial law mu_n.
//
// Every quadrature over the radial coordinate y starts at the kink
// y0 = R_n - r where theta_r(y) leaves the constant branch pi. Past the kink
// the integrand behaves like pi - c sqrt(y - y0) (and the radial derivative
// like 1 / sqrt(y - y0)), so the panels are integrated in u = sqrt(y - y0),
// which makes both integrands smooth.

namespace rhg {

/// Radial density alpha sinh(alpha r) / (cosh(alpha R_n) - 1) on [0, R_n), zero elsewhere.
inline double rho_density(double r, const ModelParams& params) {
  if (!(r >= 0.0 && r < params.r_max())) return 0.0;
  const double s = params.half_alpha_sinh();
  return params.alpha() * std::sinh(params.alpha() * r) / (2.0 * s * s);
}

/// mu_n(B_0(r)) = (cosh(alpha r) - 1) / (cosh(alpha R_n) - 1), clamped to [0, 1].
inline double mu_ball_origin(double r, const ModelParams& params) {
  if (!(r > 0.0)) return 0.0;
  if (r >= params.r_max()) return 1.0;
  const double ratio = std::sinh(0.5 * params.alpha() * r) / params.half_alpha_sinh();
  return ratio * ratio;
}

namespace detail {

/// mu_n(B_0(hi)) - mu_n(B_0(lo)) for 0 <= lo <= hi <= R_n without cancellation.
inline double mu_origin_annulus(double lo, double hi, const ModelParams& params) {
  const double a = params.alpha();
  const double s = params.half_alpha_sinh();
  return std::sinh(0.5 * a * (hi + lo)) * std::sinh(0.5 * a * (hi - lo)) / (s * s);
}

/// (1/pi) int_{max(x, y0)}^{R_n} theta_r(y) rho_n(y) dy, integrated in u = sqrt(y - y0).
inline double outer_ball_part(double r, double x, const ModelParams& params,
                              const QuadratureConfig& q) {
  const double R = params.r_max();
  const double y0 = R - r;
  const double u_lo = x > y0 ? std::sqrt(x - y0) : 0.0;
  const double u_hi = std::sqrt(r);
  if (!(u_hi > u_lo)) return 0.0;
  auto integrand = [&](double u) {
    const double t = u * u;
    const double y = y0 + t;
    return detail::theta_from_offset(r, y, t, R) * rho_density(y, params) * 2.0 * u;
  };
  return integrate(integrand, u_lo, u_hi, q).value / pi;
}

inline void check_radius(double r, const ModelParams& params, const char* what) {
  if (!(r >= 0.0 && r < params.r_max()))
    throw DomainError(std::string(what) + ": r must lie in [0, R_n)");
}

}  // namespace detail

/// mu_n(B_r(R_n)) = (1/pi) int_0^{R_n} theta_r(y) rho_n(y) dy.
/// The constant branch [0, R_n - r] is integrated in closed form.
inline double mu_ball(double r, const ModelParams& params, const QuadratureConfig& q = {}) {
  detail::check_radius(r, params, "mu_ball");
  const double inner = mu_ball_origin(params.r_max() - r, params);
  return inner + detail::outer_ball_part(r, 0.0, params, q);
}

/// mu_n(B_r(R_n) \ B_0(x)) = (1/pi) int_x^{R_n} theta_r(y) rho_n(y) dy.
inline double mu_ball_minus_origin_ball(double r, double x, const ModelParams& params,
                                        const QuadratureConfig& q = {}) {
  detail::check_radius(r, params, "mu_ball_minus_origin_ball");
  if (!(x >= 0.0 && x < params.r_max()))
    throw DomainError("mu_ball_minus_origin_ball: x must lie in [0, R_n)");
  const double y0 = params.r_max() - r;
  const double inner = x < y0 ? detail::mu_origin_annulus(x, y0, params) : 0.0;
  return inner + detail::outer_ball_part(r, x, params, q);
}

/// Which closed-form leading term mu_ball_approx returns.
enum class BallApprox {
  supercritical,  ///< C_alpha e^{-r/2}, alpha > 1/2
  small_radius,   ///< 1 - alpha r / pi
  critical_limit  ///< V_alpha(r), the large-n limit at fixed r
};

/// C_alpha = 2 alpha / (pi (alpha - 1/2)); defined for alpha > 1/2 only.
inline double c_alpha(double alpha) {
  if (!(alpha > 0.5)) throw DomainError("C_alpha requires alpha > 1/2");
  return 2.0 * alpha / (pi * (alpha - 0.5));
}

namespace detail {

/// Angle of the limit integrand of V_alpha at x = x* + u^2, x* = e^{-alpha r}:
/// arccos((cosh r - w) / sinh r) with w = x^{-1/alpha}, written as
/// 2 atan(sqrt((w - e^{-r}) / (e^r - w))).
struct ValphaTerms {
  double above;  // w - e^{-r}
  double below;  // e^r - w
  double wm1;    // w - 1
};

inline ValphaTerms valpha_terms(double u, double r, double alpha, double x_star) {
  const double log_ratio = std::log1p(u * u / x_star);  // log(x / x*), in [0, alpha r]
  const double wm1 = std::expm1(r - log_ratio / alpha);
  const double below = -std::exp(r) * std::expm1(-log_ratio / alpha);
  return {wm1 - std::expm1(-r), below, wm1};
}

inline void check_valpha_args(double r, double alpha, const char* what) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError(std::string(what) + ": alpha must be positive");
  if (!(r >= 0.0) || std::isnan(r)) throw DomainError(std::string(what) + ": r must be >= 0");
}

}  // namespace detail

/// V_alpha(r) = (1/pi) int_0^1 arccos(max(-1, (cosh r - x^{-1/alpha}) / sinh r)) dx.
/// The max is active on [0, e^{-alpha r}], contributing exactly e^{-alpha r};
/// the rest is integrated in u = sqrt(x - e^{-alpha r}). V_alpha(0) = 1.
inline double v_alpha(double r, double alpha, const QuadratureConfig& q = {}) {
  detail::check_valpha_args(r, alpha, "v_alpha");
  if (r == 0.0) return 1.0;
  if (r > 700.0) return 0.0;
  const double x_star = std::exp(-alpha * r);
  auto integrand = [&](double u) {
    const auto t = detail::valpha_terms(u, r, alpha, x_star);
    if (!(t.below > 0.0)) return pi * 2.0 * u;
    if (!(t.above > 0.0)) return 0.0;
    return 2.0 * std::atan(std::sqrt(t.above / t.below)) * 2.0 * u;
  };
  const double u_hi = std::sqrt(-std::expm1(-alpha * r));
  return x_star + integrate(integrand, 0.0, u_hi, q).value / pi;
}

/// dV_alpha/dr = (1/pi) int_{e^{-alpha r}}^1 d/dr arccos(...) dx; the boundary
/// term vanishes since the angle equals pi at the kink.
inline double v_alpha_derivative(double r, double alpha, const QuadratureConfig& q = {}) {
  detail::check_valpha_args(r, alpha, "v_alpha_derivative");
  if (!(r > 0.0)) throw DomainError("v_alpha_derivative: r must be > 0");
  const double x_star = std::exp(-alpha * r);
  const double sh = std::sinh(r);
  const double ch = std::cosh(r);
  const double half = std::sinh(0.5 * r);
  auto integrand = [&](double u) {
    if (!(u > 0.0)) return 0.0;
    const auto t = detail::valpha_terms(u, r, alpha, x_star);
    // -(w cosh r - 1) / (sinh r sqrt((w - e^{-r})(e^r - w))) times dx/du = 2u,
    // with w cosh r - 1 = (w - 1) cosh r + 2 sinh^2(r/2).
    const double num = t.wm1 * ch + 2.0 * half * half;
    return -num / (sh * std::sqrt(t.above * t.below)) * 2.0 * u;
  };
  const double u_hi = std::sqrt(-std::expm1(-alpha * r));
  return integrate(integrand, 0.0, u_hi, q).value / pi;
}

/// Solves V_alpha(r) = y for r by bisection (absolute tolerance 1e-10 in r).
inline double v_alpha_inverse(double y, double alpha, const QuadratureConfig& q = {}) {
  if (!(y > 0.0 && y <= 1.0)) throw DomainError("v_alpha_inverse: y must lie in (0, 1]");
  if (!(alpha > 0.0)) throw DomainError("v_alpha_inverse: alpha must be positive");
  if (y == 1.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (v_alpha(hi, alpha, q) > y) {
    lo = hi;
    hi *= 2.0;
    if (hi > 700.0) return hi;
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (v_alpha(mid, alpha, q) > y)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Closed-form leading term of mu_n(B_r(R_n)) for the selected regime.
inline double mu_ball_approx(double r, const ModelParams& params, BallApprox mode,
                             const QuadratureConfig& q = {}) {
  switch (mode) {
    case BallApprox::supercritical:
      return c_alpha(params.alpha()) * std::exp(-0.5 * r);
    case BallApprox::small_radius:
      return 1.0 - params.alpha() * r / pi;
    case BallApprox::critical_limit:
      return v_alpha(r, params.alpha(), q);
  }
  throw DomainError("mu_ball_approx: unknown mode");
}

/// d/dr mu_n(B_r(R_n)) = (1/pi) int_{R_n - r}^{R_n} f_{n,r}(y) rho_n(y) dy with
/// f_{n,r} = d/dr arccos(c_{n,r}(y)). Written with
///   A = sinh((R + r - y)/2), B = sinh((R - r + y)/2),
///   C = sinh((r + y + R)/2), D = sinh((r + y - R)/2),
/// f_{n,r}(y) = -(cosh R cosh r - cosh y) / (2 sinh r sqrt(ABCD)); the 1/sqrt(D)
/// singularity at the kink cancels against dy = 2u du.
inline double mu_ball_radial_derivative(double r, const ModelParams& params,
                                        const QuadratureConfig& q = {}) {
  const double R = params.r_max();
  if (!(r > 0.0 && r < R))
    throw DomainError("mu_ball_radial_derivative: r must lie in (0, R_n)");
  const double y0 = R - r;
  const double cosh_R = std::cosh(R);
  const double sinh_r = std::sinh(r);
  auto integrand = [&](double u) {
    if (!(u > 0.0)) return 0.0;
    const double t = u * u;
    const double y = y0 + t;
    // cosh R cosh r - cosh y = 2 cosh R sinh^2(r/2) + 2 sinh((R+y)/2) sinh((R-y)/2)
    const double half_sinh = std::sinh(0.5 * r);
    const double numerator = 2.0 * cosh_R * half_sinh * half_sinh +
                             2.0 * std::sinh(0.5 * (R + y)) * std::sinh(0.5 * (R - y));
    const double log_abc = detail::log_sinh(0.5 * (R + r - y)) +
                           detail::log_sinh(0.5 * (R - r + y)) +
                           detail::log_sinh(0.5 * (r + y + R));
    // 2u / sqrt(D), with D = sinh(t / 2) ~ t / 2 near the kink.
    const double jac = 2.0 * u / std::sqrt(std::sinh(0.5 * t));
    const double f = -numerator * std::exp(-0.5 * log_abc) / (2.0 * sinh_r);
    return f * jac * rho_density(y, params);
  };
  return integrate(integrand, 0.0, std::sqrt(r), q).value / pi;
}

enum class OriginApprox {
  small,  ///< (alpha r)^2 e^{-alpha R_n}, r -> 0
  large   ///< e^{alpha (r - R_n)}, r -> infinity
};

/// Leading terms of mu_n(B_0(r)) for small and large radii.
inline double mu_origin_approx(double r, const ModelParams& params, OriginApprox mode) {
  if (!(r >= 0.0)) throw DomainError("mu_origin_approx: r must be >= 0");
  const double a = params.alpha();
  if (mode == OriginApprox::small) return (a * r) * (a * r) * std::exp(-a * params.r_max());
  return std::exp(a * (r - params.r_max()));
}

}  // namespace rhg
