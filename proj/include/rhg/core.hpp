#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rhg {

inline constexpr double pi = std::numbers::pi;

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when adaptive quadrature cannot meet its tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A node position in polar coordinates: hyperbolic radius and angle in (-pi, pi].
struct PolarPoint {
  double r = 0.0;
  double theta = 0.0;

  friend bool operator==(const PolarPoint&, const PolarPoint&) = default;
};

inline bool is_valid(const PolarPoint& p) {
  return std::isfinite(p.r) && std::isfinite(p.theta) && p.r >= 0.0 && p.theta > -pi &&
         p.theta <= pi;
}

/// Model parameters (alpha, nu, n) together with the derived disc radius
/// R_n = 2 ln(n / nu) and a few cached hyperbolic quantities of R_n.
///
/// Construction validates the parameters; an instance is always usable by
/// every sampler and measure routine.
class ModelParams {
 public:
  ModelParams(double alpha, double nu, std::uint64_t n) : alpha_(alpha), nu_(nu), n_(n) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
    if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("nu must be positive");
    if (n < 2) throw DomainError("n must be at least 2");
    if (!(static_cast<double>(n) > nu)) throw DomainError("n must exceed nu (R_n > 0)");
    r_max_ = 2.0 * std::log(static_cast<double>(n) / nu);
    if (!(alpha * r_max_ < 700.0)) throw DomainError("alpha * R_n must stay below 700");
    // cosh(R) * cosh(r) and sinh((r + y + R) / 2) appear in the measure integrands.
    if (!(r_max_ <= max_radius)) throw DomainError("R_n must not exceed 300");
    cosh_r_max_ = 0.5 * (std::exp(r_max_) + std::exp(-r_max_));
    half_alpha_sinh_ = std::sinh(0.5 * alpha * r_max_);
  }

  static constexpr double max_radius = 300.0;

  double alpha() const { return alpha_; }
  double nu() const { return nu_; }
  std::uint64_t n() const { return n_; }
  double n_real() const { return static_cast<double>(n_); }
  /// The disc radius R_n.
  double r_max() const { return r_max_; }
  /// cosh(R_n), evaluated exactly as the connection predicate evaluates cosh of a radius difference.
  double cosh_r_max() const { return cosh_r_max_; }
  /// sinh(alpha R_n / 2); cosh(alpha R_n) - 1 = 2 sinh(alpha R_n / 2)^2.
  double half_alpha_sinh() const { return half_alpha_sinh_; }

  friend bool operator==(const ModelParams& a, const ModelParams& b) {
    return a.alpha_ == b.alpha_ && a.nu_ == b.nu_ && a.n_ == b.n_;
  }

 private:
  double alpha_;
  double nu_;
  std::uint64_t n_;
  double r_max_ = 0.0;
  double cosh_r_max_ = 0.0;
  double half_alpha_sinh_ = 0.0;
};

enum class Regime { subcritical, critical, supercritical };

/// Exact comparison against 1/2; no tolerance band.
inline Regime regime_of(double alpha) {
  if (alpha < 0.5) return Regime::subcritical;
  if (alpha == 0.5) return Regime::critical;
  return Regime::supercritical;
}

inline std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::subcritical: return "subcritical";
    case Regime::critical: return "critical";
    case Regime::supercritical: return "supercritical";
  }
  return "unknown";
}

namespace detail {

/// log(sinh(x)) for x > 0 without overflow.
inline double log_sinh(double x) {
  if (x < 1.0) return std::log(std::sinh(x));
  return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
}

}  // namespace detail

}  // namespace rhg
