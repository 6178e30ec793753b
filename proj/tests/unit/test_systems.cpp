#include <gtest/gtest.h>

#include "gen.hpp"
#include "mvop/special_family.hpp"
#include "mvop/systems.hpp"

using namespace mvop;
using mvop::testing::Gen;
using mvop::testing::rel_err;

namespace {

WeightSpec dg1(Real s) { return dg1_weight_spec({Complex(1)}, 1, s); }

std::vector<Real> grid(Real lo, Real hi, Real step) {
  std::vector<Real> out;
  for (int i = 0; lo + i * step <= hi + 1e-12L; ++i) out.push_back(lo + i * step);
  return out;
}

}  // namespace

// ------------------------------------------------------------ discrete

TEST(Discrete, ScalarRecurrenceFromA) {
  // B = 0: alpha_n = 2n + alpha + 1 + a_n
  const Real alpha = 1.5L;
  const auto chain = compute_lax_chain(build_family(scalar_laguerre_spec(alpha, 0.7L), 4));
  for (int n = 0; n <= 4; ++n)
    EXPECT_LT(std::abs(chain[n].alpha_rec(0, 0) - (2 * n + 1 + alpha + chain[n].a(0, 0))), 1e-13L) << n;
}

TEST(Discrete, ScalarAllEntries) {
  const Family fam = build_family(scalar_laguerre_spec(1, 1), 6);
  const auto chain = compute_lax_chain(fam);
  for (int n = 1; n <= 5; ++n) {
    const ResidualReport r = residual_dPsystem(chain, n, 1e-9L);
    EXPECT_TRUE(r.all_passed()) << n << " " << r.max_rel();
  }
}

TEST(Discrete, DegreeZeroSkips) {
  const Family fam = build_family(dg1(1), 2);
  const ResidualReport r = residual_dPsystem(compute_lax_chain(fam), 0, 1e-6L);
  for (const char* id : {"dP4", "dP5", "telescopic_beta", "formal_monodromy", "formal_monodromy_combined"}) {
    ASSERT_NE(r.find(id), nullptr) << id;
    EXPECT_TRUE(r.find(id)->skipped) << id;
  }
  EXPECT_FALSE(r.find("dP1")->skipped);
  EXPECT_TRUE(r.all_passed());
}

TEST(Discrete, TwoByTwoGrid) {
  for (Real s : {0.5L, 1.0L, 2.0L}) {
    const auto chain = compute_lax_chain(build_family(dg1(s), 6));
    for (int n = 0; n <= 5; ++n) {
      const ResidualReport r = residual_dPsystem(chain, n, 1e-6L);
      EXPECT_TRUE(r.all_passed()) << double(s) << " " << n << " " << r.max_rel();
    }
  }
}

TEST(Discrete, ThreeByThree) {
  const auto chain = compute_lax_chain(build_family(dg1_weight_spec({Complex(1), Complex(2)}, 1, 1), 5));
  for (int n = 0; n <= 4; ++n) EXPECT_TRUE(residual_dPsystem(chain, n, 1e-6L).all_passed()) << n;
}

TEST(DiscreteClosed, InverseReadingHolds) {
  for (Real s : {0.5L, 1.0L, 2.0L}) {
    const auto chain = compute_lax_chain(build_family(dg1(s), 6));
    for (int n = 1; n <= 5; ++n) {
      const ResidualReport r = residual_discrete_closed(chain, n, 1e-6L, DReading::inverse);
      EXPECT_TRUE(r.all_passed()) << double(s) << " " << n << " " << r.max_rel();
    }
  }
}

TEST(DiscreteClosed, LiteralPowerReadingFails) {
  const auto chain = compute_lax_chain(build_family(dg1(1), 6));
  std::size_t failing = 0;
  for (int n = 1; n <= 5; ++n) {
    const ResidualReport r = residual_discrete_closed(chain, n, 1e-6L, DReading::power_n_minus_1);
    failing += r.failures();
    EXPECT_FALSE(r.find("first_order_1")->skipped);
  }
  EXPECT_GT(failing, 0u);
}

TEST(DiscreteClosed, DegreeZeroAllSkipped) {
  const auto chain = compute_lax_chain(build_family(dg1(1), 2));
  const ResidualReport r = residual_discrete_closed(chain, 0, 1e-6L);
  for (const auto& e : r.entries()) EXPECT_TRUE(e.skipped) << e.identity;
}

TEST(DiscreteClosed, ChainTooShortThrows) {
  const auto chain = compute_lax_chain(build_family(dg1(1), 2));
  EXPECT_THROW(residual_dPsystem(chain, 2, 1e-6L), IndexError);
}

// ---------------------------------------------------------- continuous

TEST(Continuous, ScalarEntries) {
  for (int n = 0; n <= 3; ++n) {
    const ResidualReport r = residual_Psystem(scalar_laguerre_spec(1, 1), n, 1, 1e-4L, 1e-5L);
    EXPECT_TRUE(r.all_passed()) << n << " " << r.max_rel();
  }
}

TEST(Continuous, TwoByTwoEntries) {
  for (int n = 0; n <= 4; ++n) {
    const ResidualReport r = residual_Psystem(dg1(1), n, 1, 1e-4L, 1e-5L);
    EXPECT_TRUE(r.all_passed()) << n << " " << r.max_rel();
    EXPECT_NE(r.find("P1"), nullptr);
    EXPECT_NE(r.find("toda_beta"), nullptr);
  }
}

TEST(Continuous, StencilNeedsPositiveLowerPoint) {
  EXPECT_THROW(build_stencil(dg1(1), 2, 1e-5L, 1e-4L), InvalidArgument);
}

TEST(ContinuousClosed, CompleteReadingHolds) {
  for (Real s : {0.5L, 1.0L, 2.0L})
    for (int n = 1; n <= 3; ++n) {
      const ResidualReport r = residual_continuous_closed(dg1(s), n, s, 1e-4L, 1e-3L);
      EXPECT_TRUE(r.all_passed()) << double(s) << " " << n << " " << r.max_rel();
    }
}

TEST(ContinuousClosed, ScalarSecondOrder) {
  const ResidualReport r = residual_continuous_closed(scalar_laguerre_spec(2, 1), 2, 1, 1e-4L, 1e-3L, {1e-5L, 1e-4L});
  EXPECT_TRUE(r.all_passed()) << r.max_rel();
}

TEST(ContinuousClosed, TruncatedSecondOrderReadingFails) {
  const ResidualReport r =
      residual_continuous_closed(dg1(1), 2, 1, 1e-4L, 1e-3L, {}, SecondOrderReading::truncated);
  EXPECT_FALSE(r.find("second_order_a")->pass() && r.find("second_order_b")->pass());
  EXPECT_TRUE(r.find("first_order_a")->pass());
}

TEST(ContinuousClosed, FiniteDifferenceOrder) {
  for (int n = 1; n <= 3; ++n) {
    const auto ratios = fd_convergence(dg1(1), n, 1, 1e-3L);
    ASSERT_FALSE(ratios.empty());
    for (const auto& f : ratios) {
      if (f.at_floor) continue;
      EXPECT_GE(f.ratio, 3.5L) << f.identity << " n=" << n;
      EXPECT_LE(f.ratio, 4.5L) << f.identity << " n=" << n;
    }
  }
}

TEST(PainleveIII, ScalarScan) {
  const PiiiScan scan = scalar_piii_scan(scalar_laguerre_spec(1, 0), 1, grid(0.5L, 2, 0.05L));
  EXPECT_EQ(scan.piii.size(), scan.s.size());
  EXPECT_LE(scan.max_piii, 1e-3L);
  EXPECT_LE(scan.max_p3, 1e-6L);
}

TEST(PainleveIII, Preconditions) {
  EXPECT_THROW(scalar_piii_scan(scalar_laguerre_spec(1, 0), 1, {1.0L}), InvalidArgument);
  EXPECT_THROW(scalar_piii_scan(dg1(0), 1, grid(0.5L, 1, 0.1L)), InvalidArgument);
}

// ------------------------------------------------------------------ flow

TEST(Evolve, ZeroLengthIsIdentity) {
  EvolveOptions opt;
  opt.record_trajectory = true;
  const auto res = evolve_from_spec(dg1(1), 1, 1, 1, opt);
  const auto init = flow_state(compute_lax(build_family(dg1(1), 1), 1));
  EXPECT_EQ(res.final_state.a, init.a);
  EXPECT_EQ(res.final_state.b, init.b);
  EXPECT_EQ(res.trajectory.size(), 1u);
  EXPECT_EQ(res.steps, 0);
}

TEST(Evolve, ScalarMatchesDirect) {
  const WeightSpec spec = scalar_laguerre_spec(1, 0.25L);
  const auto res = evolve_from_spec(spec, 1, 0.25L, 1);
  const auto direct = compute_lax(build_family(spec.with_s(1), 1), 1);
  EXPECT_LT(rel_err(res.final_state.a, direct.a), 1e-6L);
  EXPECT_LT(rel_err(res.final_state.b, direct.b), 1e-6L);
}

TEST(Evolve, TwoByTwoMatchesDirect) {
  for (int n = 1; n <= 2; ++n) {
    const auto res = evolve_from_spec(dg1(0.5L), n, 0.5L, 2);
    const auto direct = compute_lax(build_family(dg1(2), n), n);
    EXPECT_LT(rel_err(res.final_state.a, direct.a), 1e-5L) << n;
    EXPECT_LT(rel_err(res.final_state.b, direct.b), 1e-5L) << n;
    EXPECT_LT(rel_err(res.final_state.Bn, direct.Bn), 1e-5L) << n;
    EXPECT_LT(rel_err(res.final_state.Bhat, direct.Bhat), 1e-5L) << n;
  }
}

TEST(Evolve, BackwardIntervalRejected) {
  EXPECT_THROW(evolve_from_spec(dg1(2), 1, 2, 1), InvalidArgument);
}

TEST(Evolve, SingularInitialDataRaisesStepFailure) {
  FlowState init;
  init.s = 1;
  init.a = zeros(2);
  init.b = identity(2);
  init.Bn = init.Bhat = build_dg1({Complex(1)}, 1).B;
  try {
    evolve_ode(init.Bn, 1, 1, init, 2);
    FAIL() << "expected StepFailure";
  } catch (const StepFailure& e) {
    EXPECT_EQ(e.last_good_s(), 1);
  }
}

TEST(Evolve, RejectsNonPositiveS) {
  EXPECT_THROW(evolve_from_spec(dg1(1), 1, 1, 0), InvalidArgument);
}

TEST(Bootstrap, DegreeZeroData) {
  WeightSpec spec = dg1(1);
  const auto steps = bootstrap_discrete(spec, 1);
  ASSERT_EQ(steps.size(), 2u);
  EXPECT_EQ(steps[0].b, zeros(2));
  spec.normalize_gamma0 = true;
  const Weight w(spec);
  EXPECT_LT(rel_err(steps[0].Bhat, w.B()), 1e-17L);
  EXPECT_LT(rel_err(steps[0].Bn, w.B()), 1e-15L);
}

TEST(Bootstrap, MatchesDirectFamily) {
  WeightSpec spec = dg1(1);
  spec.normalize_gamma0 = true;
  const Family ref = build_family(spec, 5);
  const auto steps = bootstrap_discrete(spec, 4, std::nullopt, &ref);
  for (int n = 0; n <= 4; ++n) {
    const auto lq = compute_lax(ref, n);
    EXPECT_LT(rel_err(steps[n].a, lq.a), 1e-6L) << n;
    EXPECT_LT(rel_err(steps[n].b, lq.b), 1e-6L) << n;
    EXPECT_LT(rel_err(steps[n].Bn, lq.Bn), 1e-6L) << n;
    EXPECT_LT(rel_err(steps[n].Bhat, lq.Bhat), 1e-6L) << n;
  }
}

TEST(Bootstrap, ScalarQuadraticRelation) {
  // b_n (b_n - s) = a_n beta_n a_{n-1} with scalars
  const Real s = 1.2L;
  const auto steps = bootstrap_discrete(scalar_laguerre_spec(1.5L, s), 4);
  for (int n = 1; n <= 4; ++n) {
    const Complex b = steps[n].b(0, 0);
    const Complex rhs = steps[n].a(0, 0) * (*steps[n].beta_rec)(0, 0) * steps[n - 1].a(0, 0);
    EXPECT_LT(std::abs(b * (b - s) - rhs), 1e-10L * (1 + std::abs(rhs))) << n;
  }
}

TEST(Bootstrap, PerturbedStartDiverges) {
  WeightSpec spec = dg1(1);
  spec.normalize_gamma0 = true;
  const Family ref = build_family(spec, 6);
  const CMatrix a0 = compute_lax(ref, 0).a * Complex(1.1L);
  EXPECT_THROW(bootstrap_discrete(spec, 6, a0, &ref), IterationDiverged);
}

TEST(InitialDerivatives, ScalarDegreeZero) {
  const auto [ad, bd] = initial_derivatives(scalar_laguerre_spec(2, 0), 0, InitialRoute::overlap);
  EXPECT_LT(std::abs(ad(0, 0) - Complex(0.5L)), 1e-17L);
  EXPECT_EQ(bd, zeros(1));
}

TEST(InitialDerivatives, ScalarClosedForms) {
  // alpha = 2: adot_n(0) = 1/2 and bdot_n(0) = -n/2
  for (int n = 0; n <= 3; ++n) {
    const auto [ad, bd] = initial_derivatives(scalar_laguerre_spec(2, 0), n, InitialRoute::overlap);
    EXPECT_LT(std::abs(ad(0, 0) - Complex(0.5L)), 1e-15L) << n;
    EXPECT_LT(std::abs(bd(0, 0) - Complex(-0.5L * n)), 1e-15L) << n;
  }
}

TEST(InitialDerivatives, OverlapMatchesQuadrature) {
  Gen g(61);
  for (int t = 0; t < 6; ++t) {
    const WeightSpec spec = scalar_laguerre_spec(g.uniform(1.2L, 4), 0);
    for (int n = 0; n <= 3; ++n) {
      const auto o = initial_derivatives(spec, n, InitialRoute::overlap);
      const auto q = initial_derivatives(spec, n, InitialRoute::quadrature);
      EXPECT_LT(rel_err(o.first, q.first), 1e-8L);
      EXPECT_LT(rel_err(o.second, q.second), 1e-8L);
    }
  }
}

TEST(InitialDerivatives, SmallSLimit) {
  const WeightSpec spec = scalar_laguerre_spec(2, 0);
  const Real s = 1e-5L;
  const auto lq = compute_lax(build_family(spec.with_s(s), 3), 2);
  const auto [ad, bd] = initial_derivatives(spec, 2, InitialRoute::overlap);
  EXPECT_LT(std::abs(lq.a(0, 0) / s - ad(0, 0)), 1e-3L);
  EXPECT_LT(std::abs(lq.b(0, 0) / s - bd(0, 0)), 1e-3L);
}

TEST(InitialDerivatives, Preconditions) {
  EXPECT_THROW(initial_derivatives(dg1(0), 1, InitialRoute::overlap), InvalidArgument);
  // the deformation parameter of the spec is ignored; everything is taken at s = 0
  const auto at0 = initial_derivatives(scalar_laguerre_spec(2, 0), 1, InitialRoute::overlap);
  const auto at_half = initial_derivatives(scalar_laguerre_spec(2, 0.5L), 1, InitialRoute::overlap);
  EXPECT_EQ(at0.first, at_half.first);
  WeightSpec diverging;
  diverging.N = 2;
  diverging.alpha = 0.5L;
  diverging.B = zeros(2);
  diverging.B(0, 0) = -0.4L;
  EXPECT_THROW(initial_derivatives(diverging, 1, InitialRoute::quadrature), DivergentMoment);
}
