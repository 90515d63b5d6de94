#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "rhg/core.hpp"
#include "rhg/measure.hpp"
#include "rhg/quadrature.hpp"

namespace rhg {

namespace detail {

inline void check_regime(Regime regime, double alpha, const char* what) {
  if (!(alpha > 0.0)) throw DomainError(std::string(what) + ": alpha must be positive");
  if (regime != regime_of(alpha))
    throw DomainError(std::string(what) + ": regime " + to_string(regime) +
                      " does not match alpha");
}

inline void check_nu(double nu, const char* what) {
  if (!(nu > 0.0)) throw DomainError(std::string(what) + ": nu must be positive");
}

}  // namespace detail

/// Constants of the limit laws for one parameter set.
struct LimitLawSpec {
  Regime regime;
  ModelParams params;
  std::optional<double> c_alpha;  ///< only in the supercritical regime
};

inline LimitLawSpec limit_law(const ModelParams& params) {
  const Regime regime = regime_of(params.alpha());
  std::optional<double> c;
  if (regime == Regime::supercritical) c = rhg::c_alpha(params.alpha());
  return {regime, params, c};
}

/// Intensity of the limiting Poisson process of normalized radii:
///   subcritical 2 alpha^2 nu^{2 alpha} u, critical nu sinh(u/2),
///   supercritical alpha nu e^{alpha u}.
inline double radius_intensity(Regime regime, double u, double alpha, double nu) {
  detail::check_regime(regime, alpha, "radius_intensity");
  detail::check_nu(nu, "radius_intensity");
  if (std::isnan(u)) throw DomainError("radius_intensity: u is NaN");
  switch (regime) {
    case Regime::subcritical:
      if (u < 0.0) throw DomainError("radius_intensity: u must be >= 0");
      return 2.0 * alpha * alpha * std::pow(nu, 2.0 * alpha) * u;
    case Regime::critical:
      if (u < 0.0) throw DomainError("radius_intensity: u must be >= 0");
      return nu * std::sinh(0.5 * u);
    case Regime::supercritical:
      return alpha * nu * std::exp(alpha * u);
  }
  return 0.0;
}

/// P[min normalized radius <= u] = 1 - exp(-Lambda(u)), Lambda the integrated intensity.
inline double min_radius_limit_cdf(Regime regime, double u, double alpha, double nu) {
  detail::check_regime(regime, alpha, "min_radius_limit_cdf");
  detail::check_nu(nu, "min_radius_limit_cdf");
  if (std::isnan(u)) throw DomainError("min_radius_limit_cdf: u is NaN");
  double cumulative = 0.0;
  switch (regime) {
    case Regime::subcritical:
      if (u <= 0.0) return 0.0;
      cumulative = alpha * alpha * std::pow(nu, 2.0 * alpha) * u * u;
      break;
    case Regime::critical: {
      if (u <= 0.0) return 0.0;
      const double s = std::sinh(0.25 * u);
      cumulative = 4.0 * nu * s * s;  // 2 nu (cosh(u/2) - 1)
      break;
    }
    case Regime::supercritical:
      cumulative = nu * std::exp(alpha * u);
      break;
  }
  return -std::expm1(-cumulative);
}

/// Intensity of the limiting Poisson process of normalized degrees:
///   subcritical 2 pi^2 nu^{2 alpha} |y| on (-inf, 0],
///   critical nu |(V^{-1})'(y)| sinh(V^{-1}(y)/2) on (0, 1],
///   supercritical 2 alpha (C_alpha nu)^{2 alpha} y^{-2 alpha - 1} on (0, inf).
inline double degree_intensity(Regime regime, double y, double alpha, double nu,
                               const QuadratureConfig& q = {}) {
  detail::check_regime(regime, alpha, "degree_intensity");
  detail::check_nu(nu, "degree_intensity");
  switch (regime) {
    case Regime::subcritical:
      if (!(y <= 0.0)) throw DomainError("degree_intensity: y must be <= 0");
      return 2.0 * pi * pi * std::pow(nu, 2.0 * alpha) * -y;
    case Regime::critical: {
      if (!(y > 0.0 && y <= 1.0)) throw DomainError("degree_intensity: y must lie in (0, 1]");
      const double r = v_alpha_inverse(y, alpha, q);
      if (r == 0.0) return 0.0;
      return nu * std::sinh(0.5 * r) / std::abs(v_alpha_derivative(r, alpha, q));
    }
    case Regime::supercritical: {
      if (!(y > 0.0)) throw DomainError("degree_intensity: y must be > 0");
      const double scale = c_alpha(alpha) * nu;
      return 2.0 * alpha * std::pow(scale, 2.0 * alpha) * std::pow(y, -2.0 * alpha - 1.0);
    }
  }
  return 0.0;
}

/// Limit CDF of the normalized maximum degree (see normalize_max_degree):
///   subcritical 1 - e^{-z^2} (z the normalized deficit, >= 0),
///   critical exp(-2 nu (cosh(V^{-1}(z)/2) - 1)) (z = D/n in [0, 1]),
///   supercritical exp(-z^{-2 alpha}) (z >= 0).
inline double maxdeg_limit_cdf(Regime regime, double z, double alpha, double nu,
                               const QuadratureConfig& q = {}) {
  detail::check_regime(regime, alpha, "maxdeg_limit_cdf");
  detail::check_nu(nu, "maxdeg_limit_cdf");
  switch (regime) {
    case Regime::subcritical:
      if (!(z >= 0.0)) throw DomainError("maxdeg_limit_cdf: z must be >= 0");
      return -std::expm1(-z * z);
    case Regime::critical: {
      if (!(z >= 0.0 && z <= 1.0)) throw DomainError("maxdeg_limit_cdf: z must lie in [0, 1]");
      if (z == 0.0) return 0.0;
      const double s = std::sinh(0.25 * v_alpha_inverse(z, alpha, q));
      return std::exp(-4.0 * nu * s * s);
    }
    case Regime::supercritical:
      if (!(z >= 0.0)) throw DomainError("maxdeg_limit_cdf: z must be >= 0");
      if (z == 0.0) return 0.0;
      return std::exp(-std::pow(z, -2.0 * alpha));
  }
  return 0.0;
}

/// Scale s_n and offset such that normalized = (d - offset) / s_n, or (offset - d) / s_n
/// in the subcritical regime where the deficit from n is tracked.
inline double max_degree_scale(Regime regime, const ModelParams& params) {
  detail::check_regime(regime, params.alpha(), "max_degree_scale");
  const double a = params.alpha();
  const double n = params.n_real();
  switch (regime) {
    case Regime::subcritical:
      return std::pow(n, a + 0.5) / (pi * std::pow(params.nu(), a));
    case Regime::critical:
      return n;
    case Regime::supercritical:
      return c_alpha(a) * params.nu() * std::pow(n, 1.0 / (2.0 * a));
  }
  return 1.0;
}

inline double normalize_max_degree(Regime regime, std::uint64_t d_max, const ModelParams& params) {
  const double scale = max_degree_scale(regime, params);
  const double d = static_cast<double>(d_max);
  if (regime == Regime::subcritical) return (params.n_real() - d) / scale;
  return d / scale;
}

/// Inverse of normalize_max_degree, rounded to the nearest integer degree.
inline std::uint64_t denormalize_max_degree(Regime regime, double z, const ModelParams& params) {
  const double scale = max_degree_scale(regime, params);
  const double d = regime == Regime::subcritical ? params.n_real() - z * scale : z * scale;
  if (!(d >= -0.5)) throw DomainError("denormalize_max_degree: negative degree");
  return static_cast<std::uint64_t>(std::llround(d));
}

/// Radius normalization under which the smallest radii converge:
/// n^{1/2 - alpha} r, r, and r - (1 - 1/(2 alpha)) R_n.
inline double normalize_radius(Regime regime, double r, const ModelParams& params) {
  detail::check_regime(regime, params.alpha(), "normalize_radius");
  const double a = params.alpha();
  switch (regime) {
    case Regime::subcritical:
      return std::pow(params.n_real(), 0.5 - a) * r;
    case Regime::critical:
      return r;
    case Regime::supercritical:
      return r - (1.0 - 1.0 / (2.0 * a)) * params.r_max();
  }
  return r;
}

/// beta = 1 / (1 + 8 alpha).
inline double ordering_exponent(double alpha) {
  if (!(alpha > 0.5)) throw DomainError("ordering_exponent: alpha must exceed 1/2");
  return 1.0 / (1.0 + 8.0 * alpha);
}

/// k_n = floor(n^beta (ln n)^{-2 alpha}), at least 1.
inline std::uint64_t ordering_rank(std::uint64_t n, double alpha) {
  const double beta = ordering_exponent(alpha);
  if (n < 2) throw DomainError("ordering_rank: n must be >= 2");
  const double nd = static_cast<double>(n);
  const double k = std::floor(std::pow(nd, beta) * std::pow(std::log(nd), -2.0 * alpha));
  return k < 1.0 ? 1 : static_cast<std::uint64_t>(k);
}

/// Chernoff bound 2 exp(-(a - b)^2 n / (8 a)) on P[Bin(n, a) <= Bin(n, b)].
inline double misorder_bound(std::uint64_t n, double a, double b) {
  if (!(b > 0.0 && b <= a && a <= 1.0))
    throw DomainError("misorder_bound: requires 0 < b <= a <= 1");
  const double d = a - b;
  return 2.0 * std::exp(-d * d * static_cast<double>(n) / (8.0 * a));
}

/// T(z) = C_alpha nu^{1 - 1/(2 alpha)} e^{-z/2}: maps the centered-radius limit
/// process onto the normalized-degree limit process when alpha > 1/2.
inline double radius_to_degree_map(double z, double alpha, double nu) {
  detail::check_nu(nu, "radius_to_degree_map");
  return c_alpha(alpha) * std::pow(nu, 1.0 - 1.0 / (2.0 * alpha)) * std::exp(-0.5 * z);
}

inline double radius_to_degree_map_derivative(double z, double alpha, double nu) {
  return -0.5 * radius_to_degree_map(z, alpha, nu);
}

/// Radius-to-degree map of any regime: -alpha z / pi, V_{1/2}(z), or T(z).
inline double degree_map(Regime regime, double z, double alpha, double nu,
                         const QuadratureConfig& q = {}) {
  detail::check_regime(regime, alpha, "degree_map");
  switch (regime) {
    case Regime::subcritical:
      return -alpha * z / pi;
    case Regime::critical:
      return v_alpha(z, alpha, q);
    case Regime::supercritical:
      return radius_to_degree_map(z, alpha, nu);
  }
  return 0.0;
}

inline double degree_map_derivative(Regime regime, double z, double alpha, double nu,
                                    const QuadratureConfig& q = {}) {
  detail::check_regime(regime, alpha, "degree_map_derivative");
  switch (regime) {
    case Regime::subcritical:
      return -alpha / pi;
    case Regime::critical:
      return v_alpha_derivative(z, alpha, q);
    case Regime::supercritical:
      return radius_to_degree_map_derivative(z, alpha, nu);
  }
  return 0.0;
}

}  // namespace rhg
