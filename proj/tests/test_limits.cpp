#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <random>

#include "rhg/limits.hpp"

using namespace rhg;

namespace {

constexpr Regime sub = Regime::subcritical;
constexpr Regime crit = Regime::critical;
constexpr Regime super = Regime::supercritical;

double integrate_ts(auto f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, a, b);
}

}  // namespace

TEST(RadiusIntensity, ClosedFormValues) {
  EXPECT_EQ(radius_intensity(crit, 0.0, 0.5, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(radius_intensity(super, 0.0, 0.75, 2.0), 1.5);
  EXPECT_DOUBLE_EQ(radius_intensity(sub, 2.0, 0.25, 1.0), 0.25);
}

TEST(RadiusIntensity, SupportAndRegimeChecks) {
  EXPECT_THROW(radius_intensity(sub, -1.0, 0.25, 1.0), DomainError);
  EXPECT_THROW(radius_intensity(crit, -1.0, 0.5, 1.0), DomainError);
  EXPECT_NO_THROW(radius_intensity(super, -5.0, 1.0, 1.0));
  EXPECT_THROW(radius_intensity(super, 1.0, 0.25, 1.0), DomainError);
  EXPECT_THROW(radius_intensity(sub, 1.0, 0.25, 0.0), DomainError);
}

TEST(MinRadiusCdf, Endpoints) {
  EXPECT_EQ(min_radius_limit_cdf(sub, 0.0, 0.25, 1.0), 0.0);
  EXPECT_EQ(min_radius_limit_cdf(crit, 0.0, 0.5, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(min_radius_limit_cdf(sub, 1e3, 0.25, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(min_radius_limit_cdf(crit, 1e3, 0.5, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(min_radius_limit_cdf(super, 1e2, 1.0, 1.0), 1.0);
  EXPECT_LT(min_radius_limit_cdf(super, -1e2, 1.0, 1.0), 1e-40);
}

TEST(MinRadiusCdf, MatchesIntegratedIntensity) {
  for (double nu : {0.5, 1.0, 3.0}) {
    for (double u : {0.1, 0.7, 2.0, 5.0}) {
      const double a = 0.3;
      const double lam = integrate_ts([&](double s) { return radius_intensity(sub, s, a, nu); }, 0, u);
      EXPECT_NEAR(min_radius_limit_cdf(sub, u, a, nu), -std::expm1(-lam), 1e-10);
      const double lc =
          integrate_ts([&](double s) { return radius_intensity(crit, s, 0.5, nu); }, 0, u);
      EXPECT_NEAR(min_radius_limit_cdf(crit, u, 0.5, nu), -std::expm1(-lc), 1e-10);
    }
    for (double u : {-3.0, -0.5, 0.0, 1.0}) {
      boost::math::quadrature::exp_sinh<double> es;
      const double a = 1.2;
      // int_{-inf}^u gamma_3 = int_0^inf gamma_3(u - s) ds
      const double ls = es.integrate([&](double s) { return radius_intensity(super, u - s, a, nu); });
      EXPECT_NEAR(min_radius_limit_cdf(super, u, a, nu), -std::expm1(-ls), 1e-10);
    }
  }
}

TEST(MinRadiusCdf, MonotoneOnGrid) {
  for (auto [reg, a] : {std::pair{sub, 0.25}, std::pair{crit, 0.5}, std::pair{super, 1.0}}) {
    double prev = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double u = -10.0 + 0.01 * i;
      const double f = min_radius_limit_cdf(reg, u, a, 1.0);
      EXPECT_GE(f, prev);
      EXPECT_GE(f, 0.0);
      EXPECT_LE(f, 1.0);
      prev = f;
    }
  }
}

TEST(DegreeIntensity, ClosedFormValues) {
  EXPECT_EQ(degree_intensity(sub, 0.0, 0.25, 1.0), 0.0);
  EXPECT_NEAR(degree_intensity(super, 1.0, 1.0, 1.0), 32.0 / (pi * pi), 1e-13);
}

TEST(DegreeIntensity, SupportChecks) {
  EXPECT_THROW(degree_intensity(sub, 0.5, 0.25, 1.0), DomainError);
  EXPECT_THROW(degree_intensity(crit, 0.0, 0.5, 1.0), DomainError);
  EXPECT_THROW(degree_intensity(crit, 1.5, 0.5, 1.0), DomainError);
  EXPECT_THROW(degree_intensity(super, 0.0, 1.0, 1.0), DomainError);
}

TEST(DegreeIntensity, CriticalPushforwardOfIntervals) {
  const double nu = 1.3;
  for (auto [a, b] : {std::pair{0.5, 1.5}, std::pair{1.0, 3.0}, std::pair{2.0, 6.0}}) {
    const double lhs = integrate_ts(
        [&](double y) { return degree_intensity(crit, y, 0.5, nu); }, v_alpha(b, 0.5),
        v_alpha(a, 0.5));
    const double rhs = integrate_ts([&](double u) { return radius_intensity(crit, u, 0.5, nu); }, a, b);
    EXPECT_NEAR(lhs, rhs, 1e-6);
  }
}

TEST(Pushforward, AllRegimesPointwise) {
  for (double nu : {0.7, 1.0, 2.5}) {
    for (int i = 1; i <= 40; ++i) {
      const double z = 0.2 * i;
      {
        const double a = 0.3;
        const double y = degree_map(sub, z, a, nu);
        const double lhs = degree_intensity(sub, y, a, nu) * std::abs(degree_map_derivative(sub, z, a, nu));
        EXPECT_NEAR(lhs, radius_intensity(sub, z, a, nu), 1e-6 * radius_intensity(sub, z, a, nu));
      }
      {
        const double y = degree_map(crit, z, 0.5, nu);
        const double lhs =
            degree_intensity(crit, y, 0.5, nu) * std::abs(degree_map_derivative(crit, z, 0.5, nu));
        EXPECT_NEAR(lhs, radius_intensity(crit, z, 0.5, nu), 1e-6 * radius_intensity(crit, z, 0.5, nu));
      }
      {
        const double a = 1.4;
        const double zc = z - 4.0;
        const double y = radius_to_degree_map(zc, a, nu);
        const double lhs =
            degree_intensity(super, y, a, nu) * std::abs(radius_to_degree_map_derivative(zc, a, nu));
        EXPECT_NEAR(lhs, radius_intensity(super, zc, a, nu), 1e-10 * radius_intensity(super, zc, a, nu));
      }
    }
  }
}

TEST(RadiusToDegreeMap, ValueAtZeroAndMonotone) {
  EXPECT_DOUBLE_EQ(radius_to_degree_map(0.0, 1.0, 4.0), c_alpha(1.0) * 2.0);
  for (int i = -50; i <= 50; ++i) EXPECT_LT(radius_to_degree_map_derivative(0.1 * i, 0.8, 1.5), 0.0);
  EXPECT_THROW(radius_to_degree_map(0.0, 0.5, 1.0), DomainError);
}

TEST(MaxdegCdf, FrechetMedian) {
  for (double a : {0.6, 1.0, 2.5}) {
    const double m = std::pow(std::log(2.0), -1.0 / (2.0 * a));
    EXPECT_NEAR(maxdeg_limit_cdf(super, m, a, 1.0), 0.5, 1e-12);
  }
}

TEST(MaxdegCdf, EndpointsAndSupport) {
  EXPECT_EQ(maxdeg_limit_cdf(sub, 0.0, 0.25, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(maxdeg_limit_cdf(sub, 40.0, 0.25, 1.0), 1.0);
  EXPECT_EQ(maxdeg_limit_cdf(crit, 0.0, 0.5, 1.0), 0.0);
  EXPECT_EQ(maxdeg_limit_cdf(crit, 1.0, 0.5, 1.0), 1.0);
  EXPECT_EQ(maxdeg_limit_cdf(super, 0.0, 1.0, 1.0), 0.0);
  EXPECT_NEAR(maxdeg_limit_cdf(super, 1e6, 1.0, 1.0), 1.0, 1e-11);
  EXPECT_THROW(maxdeg_limit_cdf(sub, -0.1, 0.25, 1.0), DomainError);
  EXPECT_THROW(maxdeg_limit_cdf(crit, 1.1, 0.5, 1.0), DomainError);
  EXPECT_THROW(maxdeg_limit_cdf(super, -1.0, 1.0, 1.0), DomainError);
}

TEST(MaxdegCdf, MonotoneOnGrid) {
  double ps = 0, pc = 0, pp = 0;
  for (int i = 1; i < 1000; ++i) {
    const double z = i / 1000.0;
    const double fs = maxdeg_limit_cdf(sub, 3 * z, 0.25, 1.0);
    const double fc = maxdeg_limit_cdf(crit, z, 0.5, 1.0);
    const double fp = maxdeg_limit_cdf(super, 5 * z, 1.0, 1.0);
    EXPECT_GE(fs, ps);
    EXPECT_GE(fc, pc);
    EXPECT_GE(fp, pp);
    ps = fs, pc = fc, pp = fp;
  }
}

TEST(MaxdegCdf, CriticalMatchesTransformedExponential) {
  // D_max / n -> V(2 arcosh(E + 1)) with E ~ Exp(2 nu).
  const double nu = 0.8;
  std::mt19937_64 gen(77);
  std::exponential_distribution<double> exp_dist(2.0 * nu);
  const int m = 1000000;
  std::vector<double> radius(m);
  for (auto& r : radius) r = 2.0 * std::acosh(exp_dist(gen) + 1.0);
  for (double z : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double threshold = v_alpha_inverse(z, 0.5);
    int hits = 0;
    for (double r : radius) hits += r >= threshold;  // V decreasing: V(r) <= z iff r >= V^{-1}(z)
    const double f = static_cast<double>(hits) / m;
    const double want = maxdeg_limit_cdf(crit, z, 0.5, nu);
    EXPECT_LE(std::abs(f - want), 3 * std::sqrt(want * (1 - want) / m) + 1e-9) << z;
  }
}

TEST(MaxdegCdf, TailIdentities) {
  // Frechet: -log F(z) = int_{z C nu}^inf g_3.
  boost::math::quadrature::exp_sinh<double> es;
  for (double a : {0.75, 1.0, 2.0}) {
    const double nu = 1.7;
    const double scale = c_alpha(a) * nu;
    for (double z : {0.3, 1.0, 2.5}) {
      const double tail =
          es.integrate([&](double s) { return degree_intensity(super, z * scale + s, a, nu); });
      EXPECT_NEAR(-std::log(maxdeg_limit_cdf(super, z, a, nu)), tail, 1e-10 * tail);
    }
  }
  // Weibull: -log(1 - F(z)) = int_{-z / (pi nu^a)}^0 g_1.
  for (double nu : {0.5, 1.0}) {
    const double a = 0.3;
    for (double z : {0.2, 1.0, 2.0}) {
      const double lo = -z / (pi * std::pow(nu, a));
      const double mass = integrate_ts([&](double y) { return degree_intensity(sub, y, a, nu); }, lo, 0.0);
      EXPECT_NEAR(-std::log1p(-maxdeg_limit_cdf(sub, z, a, nu)), mass, 1e-10);
    }
  }
  // Critical: -log F(z) = int_z^1 g_2.
  for (double z : {0.2, 0.5, 0.8}) {
    const double mass =
        integrate_ts([&](double y) { return degree_intensity(crit, y, 0.5, 1.0); }, z, 1.0);
    EXPECT_NEAR(-std::log(maxdeg_limit_cdf(crit, z, 0.5, 1.0)), mass, 1e-6);
  }
}

TEST(NormalizeMaxDegree, ClosedForms) {
  const ModelParams ps(0.25, 1, 10000), pc(0.5, 1, 10000), pp(1.0, 1, 10000);
  EXPECT_EQ(normalize_max_degree(sub, 10000, ps), 0.0);
  EXPECT_DOUBLE_EQ(normalize_max_degree(crit, 5000, pc), 0.5);
  EXPECT_NEAR(normalize_max_degree(super, 200, pp), pi / 2, 1e-14);
}

TEST(NormalizeMaxDegree, RoundTripIsExact) {
  for (double a : {0.25, 0.5, 1.0, 3.0}) {
    for (std::uint64_t n : {100ULL, 99991ULL, 1000000ULL}) {
      const ModelParams p(a, 1.3, n);
      const Regime reg = regime_of(a);
      for (std::uint64_t d = 0; d < n; d += 1 + n / 997) {
        EXPECT_EQ(denormalize_max_degree(reg, normalize_max_degree(reg, d, p), p), d);
      }
    }
  }
}

TEST(NormalizeRadius, Regimes) {
  const ModelParams ps(0.25, 1, 10000), pc(0.5, 1, 10000), pp(1.0, 1, 10000);
  EXPECT_DOUBLE_EQ(normalize_radius(sub, 2.0, ps), 2.0 * std::pow(1e4, 0.25));
  EXPECT_EQ(normalize_radius(crit, 2.0, pc), 2.0);
  EXPECT_DOUBLE_EQ(normalize_radius(super, 2.0, pp), 2.0 - 0.5 * pp.r_max());
}

TEST(OrderingExponent, Values) {
  EXPECT_DOUBLE_EQ(ordering_exponent(1.0), 1.0 / 9.0);
  EXPECT_NEAR(ordering_exponent(0.5 + 1e-12), 0.2, 1e-11);
  EXPECT_THROW(ordering_exponent(0.5), DomainError);
}

TEST(OrderingRank, FloorAndDirectEvaluation) {
  const double direct = std::floor(std::pow(1e6, 1.0 / 9.0) * std::pow(std::log(1e6), -2.0));
  EXPECT_EQ(ordering_rank(1000000, 1.0), std::max(1.0, direct));
  EXPECT_EQ(ordering_rank(1000000, 1.0), 1u);
  const double n = 1e15, a = 0.55;
  const double k = std::floor(std::pow(n, 1 / (1 + 8 * a)) * std::pow(std::log(n), -2 * a));
  EXPECT_GT(k, 1.0);
  EXPECT_EQ(ordering_rank(1000000000000000ULL, a), static_cast<std::uint64_t>(k));
  EXPECT_THROW(ordering_rank(1000, 0.4), DomainError);
}

TEST(MisorderBound, ClosedForms) {
  EXPECT_EQ(misorder_bound(1000, 0.3, 0.3), 2.0);
  EXPECT_NEAR(misorder_bound(1000, 0.5, 0.4), 2 * std::exp(-2.5), 1e-15);
  EXPECT_THROW(misorder_bound(10, 0.3, 0.4), DomainError);
  EXPECT_THROW(misorder_bound(10, 0.3, 0.0), DomainError);
  EXPECT_THROW(misorder_bound(10, 1.2, 0.4), DomainError);
}

TEST(MisorderBound, DominatesIndependentBinomials) {
  std::mt19937_64 gen(5);
  for (auto [n, a, b] : {std::tuple{100, 0.5, 0.3}, std::tuple{1000, 0.2, 0.15},
                         std::tuple{50, 0.9, 0.5}, std::tuple{2000, 0.05, 0.04}}) {
    std::binomial_distribution<int> A(n, a), B(n, b);
    int bad = 0;
    const int trials = 100000;
    for (int t = 0; t < trials; ++t) bad += A(gen) <= B(gen);
    EXPECT_LE(static_cast<double>(bad) / trials, misorder_bound(n, a, b));
  }
}

TEST(LimitLaw, ConstantsPerRegime) {
  EXPECT_FALSE(limit_law(ModelParams(0.25, 1, 100)).c_alpha.has_value());
  EXPECT_FALSE(limit_law(ModelParams(0.5, 1, 100)).c_alpha.has_value());
  const auto s = limit_law(ModelParams(1.0, 1, 100));
  EXPECT_EQ(s.regime, super);
  ASSERT_TRUE(s.c_alpha.has_value());
  EXPECT_GT(*s.c_alpha, 0.0);
}
