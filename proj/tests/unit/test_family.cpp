#include <gtest/gtest.h>

#include "gen.hpp"
#include "mvop/family.hpp"
#include "mvop/report.hpp"
#include "mvop/special_family.hpp"

using namespace mvop;
using mvop::testing::Gen;
using mvop::testing::rel_err;

TEST(Family, DegreeZero) {
  const WeightSpec spec = dg1_weight_spec({Complex(1)}, 1, 1);
  const Family fam = build_family(spec, 2);
  EXPECT_LT(rel_err(fam.gamma(0), inverse(matrix_moment(spec, 0))), 1e-17L);
  EXPECT_EQ(fam.at_zero(0), identity(2));
  EXPECT_EQ(fam.eval(0, Complex(3.7L)), identity(2));
  EXPECT_EQ(fam.leading_subcoeff(0), zeros(2));
}

TEST(Family, DegreeOne) {
  const WeightSpec spec = dg1_weight_spec({Complex(1)}, 1, 1);
  const Family fam = build_family(spec, 2);
  const CMatrix m0 = matrix_moment(spec, 0), m1 = matrix_moment(spec, 1);
  EXPECT_LT(rel_err(fam.coeff(1, 0), -right_solve(m1, m0)), 1e-16L);
}

TEST(Family, ClassicalLaguerreRecurrence) {
  for (Real alpha : {0.5L, 1.0L, 2.0L, 3.5L}) {
    const Family fam = build_family(scalar_laguerre_spec(alpha, 0), 6);
    for (int n = 0; n <= 6; ++n) {
      EXPECT_LT(rel_err(fam.alpha_rec(n)(0, 0).real(), 2 * n + alpha + 1), 1e-12L) << n;
      if (n >= 1) EXPECT_LT(rel_err(fam.beta_rec(n)(0, 0).real(), n * (n + alpha)), 1e-12L) << n;
    }
  }
}

TEST(Family, RecurrenceHoldsAtRandomPoints) {
  Gen g(41);
  const Family fam = build_family(dg1_weight_spec({Complex(1)}, 1, 1), 6);
  for (int t = 0; t < 20; ++t) {
    const Real x = g.uniform(0, 12);
    for (int n = 1; n < 6; ++n) {
      const CMatrix lhs = x * fam.eval(n, x);
      const CMatrix rhs = fam.eval(n + 1, x) + fam.alpha_rec(n) * fam.eval(n, x) + fam.beta_rec(n) * fam.eval(n - 1, x);
      EXPECT_LT(rel_err(lhs, rhs), 1e-9L) << "x=" << double(x) << " n=" << n;
    }
  }
}

TEST(Family, NormsHermitianAndBetaConvention) {
  const Family fam = build_family(dg1_weight_spec({Complex(1), Complex(2)}, 1, 0.7L), 5);
  for (int n = 0; n <= 5; ++n) {
    EXPECT_LT(hermitian_defect(fam.gamma(n)), 1e-12L * fro_norm(fam.gamma(n)));
    EXPECT_LT(fro_norm(fam.gamma(n) * fam.gamma_inv(n) - identity(3)), 1e-14L);
    if (n >= 1) EXPECT_LT(rel_err(fam.beta_rec(n), fam.gamma_inv(n) * fam.gamma(n - 1)), 1e-14L);
  }
}

TEST(Family, RealWeightGivesRealCoefficients) {
  const Family fam = build_family(dg1_weight_spec({Complex(1)}, 1.5L, 2), 4);
  for (int n = 1; n <= 4; ++n)
    for (int j = 0; j < n; ++j) EXPECT_EQ(fam.coeff(n, j).imag().norm(), 0) << n << "," << j;
}

TEST(Family, OrthogonalityScalar) {
  const Family fam = build_family(scalar_laguerre_spec(1, 0), 5);
  const ResidualReport r = orthogonality_residual(fam, 1e-10L);
  EXPECT_TRUE(r.all_passed()) << r.max_rel();
}

TEST(Family, OrthogonalityTwoByTwo) {
  const Family fam = build_family(dg1_weight_spec({Complex(1)}, 1, 1), 6);
  const ResidualReport r = orthogonality_residual(fam, 1e-8L);
  EXPECT_EQ(r.entries().size(), 49u);
  EXPECT_TRUE(r.all_passed()) << r.max_rel();
}

TEST(Family, OrthogonalityProperty) {
  Gen g(42);
  for (int t = 0; t < 8; ++t) {
    const Real nu = g.uniform(0.3L, 2.5L), alpha = g.uniform(0.3L, 3), s = g.log_uniform(0.1L, 4);
    const Family fam = build_family(dg1_weight_spec({Complex(nu)}, alpha, s), 4);
    EXPECT_TRUE(orthogonality_residual(fam, 1e-8L).all_passed()) << nu << " " << alpha << " " << s;
  }
}

TEST(Family, NormalizedWeightHasUnitGammaZero) {
  WeightSpec spec = dg1_weight_spec({Complex(1)}, 1, 1);
  spec.normalize_gamma0 = true;
  const Family fam = build_family(spec, 3);
  EXPECT_LT(fro_norm(fam.gamma(0) - identity(2)), 1e-15L);
}

TEST(Family, IndexErrors) {
  const Family fam = build_family(scalar_laguerre_spec(1, 1), 3);
  EXPECT_THROW(fam.gamma(5), IndexError);
  EXPECT_THROW(fam.beta_rec(0), IndexError);
  EXPECT_THROW(fam.coeff(2, 2), IndexError);
  EXPECT_THROW(build_family(scalar_laguerre_spec(1, 1), -1), InvalidArgument);
}

TEST(Family, IllConditionedHankelThrows) {
  EXPECT_THROW(build_family(scalar_laguerre_spec(1, 1), 60), SingularMoment);
}
