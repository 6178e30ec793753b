#include <gtest/gtest.h>

#include "gen.hpp"
#include "mvop/special_family.hpp"
#include "mvop/systems.hpp"

using namespace mvop;
using mvop::testing::Gen;
using mvop::testing::rel_err;

namespace {

CMatrix m2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ResidualReport section_final_at(const DG1Family& f, Real s, int n) {
  const auto chain = compute_lax_chain(build_family(dg1_weight_spec(f, s), n + 1));
  return verify_section_final(f, chain, n, 1e-6L);
}

}  // namespace

TEST(BuildDg1, TwoByTwoMatchesProductFormula) {
  for (Real nu : {1.0L, -0.7L, 2.5L})
    for (Real alpha : {0.5L, 1.0L, 3.0L}) {
      const DG1Family f = build_dg1({Complex(nu)}, alpha);
      EXPECT_LT(fro_norm(f.B - m2(1, nu / (alpha + 1), 0, 0)), 1e-18L);
      EXPECT_LT(fro_norm(f.B0 - m2(0, nu, 0, 0)), 1e-18L);
    }
}

TEST(BuildDg1, OppositeCornerSignBreaksHermiticity) {
  const Real nu = 1, alpha = 1;
  const CMatrix b0 = m2(0, nu, 0, 0);
  const CMatrix flipped = m2(1, -nu / (alpha + 1), 0, 0);
  // the commutator relation alone cannot tell the two signs apart
  EXPECT_LT(fro_norm(commutator(flipped, b0) - b0), 1e-18L);
  EXPECT_GT(hermitian_defect(flipped * flipped + alpha * flipped - b0), 1.0L);
  const DG1Family f = build_dg1({Complex(nu)}, alpha);
  EXPECT_LT(hermitian_defect(f.B * f.B + alpha * f.B - f.B0), 1e-18L);
}

TEST(BuildDg1, ThreeByThreeFrozen) {
  const DG1Family f = build_dg1({Complex(1), Complex(2)}, 1);
  CMatrix ref(3, 3);
  ref << 2, 0.25L, 1.0L / 12, 0, 1, 1, 0, 0, 0;
  EXPECT_LT(fro_norm(f.B - ref), 1e-17L);
  const ResidualReport r = verify_dg1_invariants(f, 1e-12L);
  EXPECT_TRUE(r.all_passed()) << r.max_rel();
}

TEST(BuildDg1, InvariantsProperty) {
  Gen g(71);
  for (int t = 0; t < 40; ++t) {
    const int N = g.integer(2, 5);
    std::vector<Complex> nu;
    for (int k = 0; k + 1 < N; ++k) nu.emplace_back(g.uniform(0.3L, 2) * (g.integer(0, 1) ? 1 : -1), g.uniform(-1, 1));
    const DG1Family f = build_dg1(nu, g.uniform(0.1L, 4));
    const ResidualReport r = verify_dg1_invariants(f, 1e-12L);
    EXPECT_TRUE(r.all_passed()) << "N=" << N << " " << r.max_rel();
    CMatrix p = f.B0;
    for (int k = 1; k < N; ++k) p = p * f.B0;
    EXPECT_LT(fro_norm(p), 1e-12L);
  }
}

TEST(BuildDg1, WeightSpecCarriesParameters) {
  const WeightSpec spec = dg1_weight_spec({Complex(1)}, 1.5L, 0.3L);
  EXPECT_EQ(spec.N, 2);
  ASSERT_TRUE(spec.dg1.has_value());
  ASSERT_TRUE(spec.tt_poly.has_value());
  EXPECT_EQ(spec.tt_poly->size(), 3u);
  for (const auto& c : *spec.tt_poly) EXPECT_LT(hermitian_defect(c), 1e-18L);
  EXPECT_NO_THROW(validate(spec));
}

TEST(BuildDg1, DegenerateParameters) {
  EXPECT_THROW(build_dg1({Complex(0)}, 1), DegenerateParameters);
  EXPECT_THROW(build_dg1({Complex(1), Complex(0)}, 1), DegenerateParameters);
  // c_j = j^2 + alpha j coincide for j = 0, 1 when alpha = -1
  EXPECT_THROW(build_dg1({Complex(1)}, -1), DegenerateParameters);
  EXPECT_THROW(build_dg1({Complex(1), Complex(1)}, -2), DegenerateParameters);
}

TEST(SectionFinal, DefaultParameters) {
  const DG1Family f = build_dg1({Complex(1)}, 1);
  const ResidualReport r = section_final_at(f, 1, 1);
  EXPECT_EQ(r.entries().size(), 8u);
  EXPECT_TRUE(r.all_passed()) << r.max_rel();
  EXPECT_LT(r.find("L_n_nilpotent")->rel_residual, 1e-15L);
}

TEST(SectionFinal, DegreeZeroSkips) {
  const DG1Family f = build_dg1({Complex(1)}, 1);
  const ResidualReport r = section_final_at(f, 1, 0);
  for (const char* id : {"relation_1", "relation_3", "relation_5", "relation_6"}) EXPECT_TRUE(r.find(id)->skipped) << id;
  for (const char* id : {"relation_2", "relation_4", "reduction"}) EXPECT_FALSE(r.find(id)->skipped) << id;
  EXPECT_TRUE(r.all_passed());
}

TEST(SectionFinal, Grid) {
  const DG1Family f = build_dg1({Complex(1)}, 1);
  for (Real s : {0.5L, 1.0L, 2.0L})
    for (int n = 1; n <= 3; ++n) {
      const ResidualReport r = section_final_at(f, s, n);
      EXPECT_TRUE(r.all_passed()) << double(s) << " " << n << " " << r.max_rel();
    }
}

TEST(SectionFinal, Property) {
  Gen g(72);
  for (int t = 0; t < 6; ++t) {
    const DG1Family f = build_dg1({Complex(g.uniform(0.4L, 2))}, g.uniform(0.5L, 3));
    const Real s = g.log_uniform(0.4L, 2.5L);
    EXPECT_TRUE(section_final_at(f, s, g.integer(1, 3)).all_passed()) << t;
  }
}

TEST(SectionFinal, ThreeByThree) {
  const DG1Family f = build_dg1({Complex(1), Complex(2)}, 1);
  for (int n = 1; n <= 2; ++n) EXPECT_TRUE(section_final_at(f, 1, n).all_passed()) << n;
}

TEST(SectionFinal, RejectsForeignChain) {
  const DG1Family f = build_dg1({Complex(1)}, 1);
  WeightSpec spec = dg1_weight_spec(f, 1);
  spec.normalize_gamma0 = true;
  const auto chain = compute_lax_chain(build_family(spec, 2));
  EXPECT_THROW(verify_section_final(f, chain, 1, 1e-6L), InvalidArgument);
  const auto short_chain = compute_lax_chain(build_family(dg1_weight_spec(f, 1), 1));
  EXPECT_THROW(verify_section_final(f, short_chain, 1, 1e-6L), IndexError);
}
