#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvop/family.hpp"
#include "mvop/lax.hpp"
#include "mvop/report.hpp"
#include "mvop/weight.hpp"

namespace mvop {

/// Lax quantities for n = 0..fam.n_max().
std::vector<LaxQuantities> compute_lax_chain(const Family& fam);

// ---------------------------------------------------------------- discrete

/// dP1-dP5, the telescoped beta_n sum, the formal monodromy identity and its
/// combined form with beta_n a_{n-1}. Needs chain[0..n+1]. Entries that need
/// beta_0 or a_{-1} are skipped at n = 0.
ResidualReport residual_dPsystem(const std::vector<LaxQuantities>& chain, int n, Real tolerance);

/// How the middle term of D_n in the second-order difference system is read:
/// a_n B a_n^{-1} (inverse) or a_n B a_n^{n-1} (literal matrix power).
enum class DReading { inverse, power_n_minus_1 };
std::string to_string(DReading r);

/// The four first-order difference equations and the two second-order ones
/// (with C_n, D_n). Needs chain[0..n+1].
ResidualReport residual_discrete_closed(const std::vector<LaxQuantities>& chain, int n, Real tolerance,
                                        DReading reading = DReading::inverse);

// -------------------------------------------------------------- continuous

/// Families at s - h, s, s + h for degrees 0..n_need, built without gamma_0
/// normalization (the congruence would depend on s).
struct SStencil {
  Real s = 0;
  Real h = 0;
  std::vector<LaxQuantities> minus, center, plus;
};
SStencil build_stencil(const WeightSpec& spec, int n_need, Real s, Real h);

/// P1-P4, the three Toda equations and the s-derivative of Phat_n(s;0),
/// with central differences of step h.
ResidualReport residual_Psystem(const WeightSpec& spec, int n, Real s, Real h, Real tolerance);

/// Whether the a-equation of the second-order pair carries the term
/// (a^{-1} a' - a^{-1} a' a^{-1}) b a / s (complete) or omits it (truncated).
enum class SecondOrderReading { truncated, complete };
std::string to_string(SecondOrderReading r);

struct ClosedTolerances {
  Real first_order = 1e-5L;
  Real second_order = 1e-3L;
};

/// First-order closed differential system for (a_n, b_n, B_n, Bhat_n), the
/// recovery formulas for B_n^* and Bhat_n, and the second-order pair for
/// (a_n, b_n). First derivatives use step h1, second derivatives step h2.
ResidualReport residual_continuous_closed(const WeightSpec& spec, int n, Real s, Real h1, Real h2,
                                          ClosedTolerances tol = {},
                                          SecondOrderReading reading = SecondOrderReading::complete);

/// Finite-difference convergence of the first-order identities: per identity,
/// residual(h) / residual(h/2). The rounding floor at h/2 is estimated as the
/// spread of the residual under shifts of s by multiples of 1e-7 s, which move
/// the truncation error negligibly but resample the rounding noise; an
/// identity is at the floor when that spread exceeds 1/8 of its residual.
struct FdRatio {
  std::string identity;
  Real h = 0;
  Real residual_h = 0;
  Real residual_half = 0;
  Real ratio = 0;
  Real noise = 0;
  bool at_floor = false;
};
std::vector<FdRatio> fd_convergence(const WeightSpec& spec, int n, Real s, Real h, int shifts = 4);

/// Scalar Painlevé III scan: second-order residual and the first-order P3
/// residual of a_n(s) at each grid point (second differences with step h).
struct PiiiScan {
  std::vector<Real> s;
  std::vector<Real> piii;
  std::vector<Real> p3;
  Real max_piii = 0;
  Real max_p3 = 0;
};
PiiiScan scalar_piii_scan(const WeightSpec& spec, int n, const std::vector<Real>& s_grid, Real h = 1e-3L);
/// Max over the grid of the Painlevé III residual.
Real scalar_piii_residual(const WeightSpec& spec, int n, const std::vector<Real>& s_grid, Real h = 1e-3L);

// --------------------------------------------------------------------- flow

/// Variables of the closed first-order system.
struct FlowState {
  Real s = 0;
  CMatrix a, b, Bn, Bhat;
};

struct EvolveOptions {
  Real rel_tol = 1e-10L;
  Real abs_tol = 1e-12L;
  Real initial_step = 1e-3L;
  bool record_trajectory = false;
};

struct EvolveResult {
  FlowState final_state;
  std::vector<FlowState> trajectory;
  long steps = 0;
};

/// Integrates the closed first-order system in s from init.s to s1 with an
/// embedded Dormand-Prince 5(4) pair. Throws StepFailure when a_n becomes
/// numerically singular along the path.
EvolveResult evolve_ode(const CMatrix& B, Real weight_alpha, int n, const FlowState& init, Real s1,
                        const EvolveOptions& opt = {});
/// Initial data from quadrature at s0, then evolve_ode.
EvolveResult evolve_from_spec(const WeightSpec& spec, int n, Real s0, Real s1, const EvolveOptions& opt = {});

FlowState flow_state(const LaxQuantities& lq);

struct BootstrapStep {
  int n = 0;
  CMatrix a, b, Bn, Bhat;
  /// alpha_n (dP1) and beta_n (telescoped sum, n >= 1).
  CMatrix alpha_rec;
  std::optional<CMatrix> beta_rec;
};

/// Four-step recursion from a_0 at fixed s in the frame where gamma_0 = I.
/// When a reference family (built with the same normalized spec) is given,
/// each step is compared against it and IterationDiverged is thrown past a
/// relative discrepancy of divergence_guard.
std::vector<BootstrapStep> bootstrap_discrete(const WeightSpec& spec, int n_max,
                                              std::optional<CMatrix> a0 = std::nullopt,
                                              const Family* reference = nullptr, Real divergence_guard = 1e-2L);

enum class InitialRoute { overlap, quadrature };
std::string to_string(InitialRoute r);

/// adot_n(0), bdot_n(0) from the s = 0 family (bdot_0(0) = 0). The overlap
/// route needs a constant T T* (tt_poly of length one).
std::pair<CMatrix, CMatrix> initial_derivatives(const WeightSpec& spec, int n, InitialRoute route);

}  // namespace mvop
