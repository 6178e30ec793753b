#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "mvop/quadrature.hpp"
#include "mvop/specfun.hpp"

using namespace mvop;
using mvop::testing::Gen;
using mvop::testing::rel_err;

namespace {

// K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt
Real bessel_k_integral(Real nu, Real z) {
  auto f = [&](Real t) -> Real {
    const Real e = -z * std::cosh(t);
    return e < -11000 ? 0 : std::exp(e) * std::cosh(nu * t);
  };
  return quad::integrate_half_line<Real>(f, 0).value;
}

Real moment_integral(Real sigma, Real s) {
  auto f = [&](Real x) -> Real { return std::pow(x, sigma - 1) * std::exp(-x - s / x); };
  return quad::integrate_half_line<Real>(f, 0).value;
}

Real poly_eval(const std::vector<Real>& c, Real x) {
  Real r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

}  // namespace

TEST(BesselK, HalfOrderClosedForm) {
  const Real z = 2;
  EXPECT_LT(rel_err(bessel_k(0.5L, z), std::sqrt(kPi / (2 * z)) * std::exp(-z)), 1e-17L);
  EXPECT_LT(rel_err(bessel_k(0.5L, z), 0.119937771968061447368036501637L), 1e-17L);
}

TEST(BesselK, FrozenValues) {
  EXPECT_LT(rel_err(bessel_k(2, 2), 0.253759754566055862937318381968L), 1e-17L);
  EXPECT_LT(rel_err(bessel_k(7.3L, 0.05L), 314959807719893.535112755188567L), 1e-16L);
  EXPECT_LT(rel_err(bessel_k(0.2L, 30), 2.13387672054750280459128885093e-14L), 1e-16L);
}

TEST(BesselK, EvenInOrder) {
  Gen g(21);
  for (int t = 0; t < 50; ++t) {
    const Real nu = g.uniform(0, 8), z = g.log_uniform(0.01L, 40);
    EXPECT_EQ(bessel_k(-nu, z), bessel_k(nu, z));
  }
}

TEST(BesselK, RecurrenceProperty) {
  Gen g(22);
  for (int t = 0; t < 300; ++t) {
    const Real nu = g.uniform(0, 10), z = g.log_uniform(0.01L, 50);
    const Real lhs = bessel_k(nu + 1, z) - bessel_k(nu - 1, z);
    const Real rhs = 2 * nu / z * bessel_k(nu, z);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10L * std::abs(bessel_k(nu + 1, z))) << nu << " " << z;
  }
}

TEST(BesselK, MatchesIntegralRepresentation) {
  Gen g(23);
  for (int t = 0; t < 60; ++t) {
    const Real nu = g.uniform(0, 6), z = g.log_uniform(0.05L, 30);
    EXPECT_LT(rel_err(bessel_k(nu, z), bessel_k_integral(nu, z)), 1e-12L) << nu << " " << z;
  }
}

TEST(BesselK, ContinuousAcrossMethodSwitch) {
  for (Real nu : {0.0L, 0.3L, 0.5L, 1.7L, 4.25L}) {
    const Real lo = bessel_k(nu, 2 - 1e-12L), hi = bessel_k(nu, 2 + 1e-12L);
    EXPECT_LT(rel_err(lo, hi), 1e-10L);
    EXPECT_LT(rel_err(bessel_k(nu, 2), bessel_k_integral(nu, 2)), 1e-13L);
  }
}

TEST(BesselK, RejectsBadArguments) {
  EXPECT_THROW(bessel_k(1, 0), InvalidArgument);
  EXPECT_THROW(bessel_k(1, -1), InvalidArgument);
  EXPECT_THROW(bessel_k(NAN, 1), InvalidArgument);
}

TEST(ScalarMoment, Examples) {
  EXPECT_LT(rel_err(scalar_moment(1, 0), 1.0L), 1e-18L);
  EXPECT_LT(rel_err(scalar_moment(4, 0), 6.0L), 1e-18L);
  EXPECT_LT(rel_err(scalar_moment(1.5L, 1), 0.35981331590418434210410950491L), 1e-17L);
  EXPECT_LT(rel_err(scalar_moment(2.7L, 0.3L), 1.31203476694111393114573168215L), 1e-17L);
}

TEST(ScalarMoment, MatchesQuadrature) {
  Gen g(24);
  for (int t = 0; t < 60; ++t) {
    const Real sigma = g.uniform(0.2L, 12), s = g.log_uniform(0.01L, 10);
    EXPECT_LT(rel_err(scalar_moment(sigma, s), moment_integral(sigma, s)), 1e-12L);
  }
}

TEST(ScalarMoment, DerivativeInSProperty) {
  // d/ds int x^{sigma-1} e^{-x-s/x} = -int x^{sigma-2} e^{-x-s/x}
  Gen g(25);
  for (int t = 0; t < 40; ++t) {
    const Real sigma = g.uniform(1.5L, 8), s = g.uniform(0.2L, 5), h = 1e-4L;
    const Real fd = (scalar_moment(sigma, s + h) - scalar_moment(sigma, s - h)) / (2 * h);
    EXPECT_LT(rel_err(fd, -scalar_moment(sigma - 1, s)), 1e-7L);
  }
}

TEST(ScalarMoment, ApproachesGammaAsSVanishes) {
  for (Real sigma : {0.5L, 1.0L, 2.5L, 7.0L})
    EXPECT_LT(rel_err(scalar_moment(sigma, 1e-14L), std::tgamma(sigma)), 1e-6L);
}

TEST(ScalarMoment, RejectsBadArguments) {
  EXPECT_THROW(scalar_moment(1, -0.1L), InvalidArgument);
  EXPECT_THROW(scalar_moment(0, 0), InvalidArgument);
}

TEST(Pochhammer, Examples) {
  EXPECT_EQ(pochhammer(3.5L, 0), 1);
  EXPECT_EQ(pochhammer(1, 5), 120);
  EXPECT_LT(rel_err(pochhammer(0.5L, 3), 0.5L * 1.5L * 2.5L), 1e-18L);
}

TEST(MonicLaguerre, LowDegrees) {
  EXPECT_EQ(monic_laguerre(0, 2.0L), std::vector<Real>{1});
  const auto l1 = monic_laguerre(1, 2.0L);
  ASSERT_EQ(l1.size(), 2u);
  EXPECT_LT(std::abs(l1[0] + 3), 1e-18L);
  EXPECT_EQ(l1[1], 1);
}

TEST(MonicLaguerre, ThreeTermRecurrence) {
  // x L_n = L_{n+1} + (2n + a + 1) L_n + n (n + a) L_{n-1}
  Gen g(26);
  for (int t = 0; t < 30; ++t) {
    const Real a = g.uniform(0.1L, 4), x = g.uniform(0, 10);
    const int n = g.integer(1, 10);
    const Real lhs = x * poly_eval(monic_laguerre(n, a), x);
    const Real rhs = poly_eval(monic_laguerre(n + 1, a), x) + (2 * n + a + 1) * poly_eval(monic_laguerre(n, a), x) +
                     n * (n + a) * poly_eval(monic_laguerre(n - 1, a), x);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12L * (1 + std::abs(lhs)));
  }
}

TEST(LaguerreOverlap, Examples) {
  EXPECT_LT(rel_err(laguerre_overlap(0, 0, 1, 1, 1), 1.0L), 1e-18L);
  // orthogonality for matching parameters, sigma = a + 1
  EXPECT_LT(std::abs(laguerre_overlap(2, 3, 1.5L, 1.5L, 2.5L)), 1e-14L);
  // squared norm n! Gamma(n + a + 1)
  EXPECT_LT(rel_err(laguerre_overlap(3, 3, 1.5L, 1.5L, 2.5L), 6 * std::tgamma(5.5L)), 1e-15L);
  EXPECT_LT(rel_err(laguerre_overlap(2, 1, 1, 0.5L, 1.3L), -1.84699469299831845392014769692L), 1e-16L);
}

TEST(LaguerreOverlap, MatchesQuadrature) {
  Gen g(27);
  for (int t = 0; t < 40; ++t) {
    const int n = g.integer(0, 4), m = g.integer(0, 4);
    const Real a1 = g.uniform(0.2L, 3), a2 = g.uniform(0.2L, 3), sigma = g.uniform(0.5L, 4);
    const auto p = monic_laguerre(n, a1), q = monic_laguerre(m, a2);
    auto f = [&](Real x) -> Real { return poly_eval(p, x) * poly_eval(q, x) * std::pow(x, sigma - 1) * std::exp(-x); };
    const Real ref = quad::integrate_half_line<Real>(f, 0).value;
    EXPECT_LE(std::abs(laguerre_overlap(n, m, a1, a2, sigma) - ref), 1e-11L * (1 + std::abs(ref)));
  }
}
