#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <string>

#include "mvop/quadrature.hpp"
#include "mvop/specfun.hpp"
#include "mvop/systems.hpp"

namespace mvop {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<Real>;

void pack(const FlowState& f, State& x) {
  const Eigen::Index n2 = f.a.size();
  x.resize(static_cast<std::size_t>(8 * n2));
  std::size_t k = 0;
  for (const CMatrix* m : {&f.a, &f.b, &f.Bn, &f.Bhat})
    for (Eigen::Index i = 0; i < n2; ++i) {
      x[k++] = (*m)(i).real();
      x[k++] = (*m)(i).imag();
    }
}

FlowState unpack(const State& x, Eigen::Index N, Real s) {
  FlowState f;
  f.s = s;
  std::size_t k = 0;
  for (CMatrix* m : {&f.a, &f.b, &f.Bn, &f.Bhat}) {
    m->resize(N, N);
    for (Eigen::Index i = 0; i < N * N; ++i) {
      (*m)(i) = Complex(x[k], x[k + 1]);
      k += 2;
    }
  }
  return f;
}

struct ClosedSystem {
  CMatrix B;
  Real alpha;
  int n;
  Eigen::Index N;

  void operator()(const State& x, State& dxds, Real s) const {
    const FlowState f = unpack(x, N, s);
    const CMatrix I = identity(N);
    const CMatrix ab = solve(f.a, f.b);
    const Complex m(2.0L * n + alpha + 1);
    FlowState d;
    d.a = (-s * I + f.b + (m * I + B + f.a + ab) * f.a + f.a * f.Bn.adjoint()) / s;
    d.b = (f.b * (m * I + B + ab) - s * (2.0L * ab + Complex(n) * I + B - f.Bhat) + ab * f.b + commutator(B, f.b) +
           f.a * f.Bn.adjoint() * ab) /
          s;
    d.Bn = commutator(f.a.adjoint(), f.Bn) / s;
    d.Bhat = commutator(ab + B, f.Bhat) / s;
    pack(d, dxds);
  }
};

}  // namespace

FlowState flow_state(const LaxQuantities& lq) { return FlowState{lq.s, lq.a, lq.b, lq.Bn, lq.Bhat}; }

EvolveResult evolve_ode(const CMatrix& B, Real weight_alpha, int n, const FlowState& init, Real s1,
                        const EvolveOptions& opt) {
  const Real s0 = init.s;
  if (!(s0 > 0)) throw InvalidArgument("evolve_ode: s0 must be positive");
  if (s1 < s0) throw InvalidArgument("evolve_ode: s1 must not be below s0");
  EvolveResult out;
  out.final_state = init;
  if (opt.record_trajectory) out.trajectory.push_back(init);
  if (s1 == s0) return out;

  const ClosedSystem sys{B, weight_alpha, n, init.a.rows()};
  State x;
  pack(init, x);
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State, Real, State, Real>>(opt.abs_tol, opt.rel_tol);

  Real s = s0;
  Real ds = std::min(opt.initial_step, s1 - s0);
  int rejected_in_row = 0;
  while (s < s1) {
    if (s + ds > s1) ds = s1 - s;
    odeint::controlled_step_result res;
    try {
      res = stepper.try_step(sys, x, s, ds);
    } catch (const Error& e) {
      throw StepFailure(std::string("evolve_ode: ") + e.what(), s);
    }
    if (res == odeint::fail) {
      if (++rejected_in_row > 200 || ds < 1e-14L * s)
        throw StepFailure("evolve_ode: step size collapsed", s);
      continue;
    }
    rejected_in_row = 0;
    ++out.steps;
    for (Real v : x)
      if (!std::isfinite(v)) throw StepFailure("evolve_ode: non-finite state", s);
    if (opt.record_trajectory) out.trajectory.push_back(unpack(x, sys.N, s));
  }
  out.final_state = unpack(x, sys.N, s1);
  return out;
}

EvolveResult evolve_from_spec(const WeightSpec& spec, int n, Real s0, Real s1, const EvolveOptions& opt) {
  WeightSpec local = spec.with_s(s0);
  local.normalize_gamma0 = false;
  const Family fam = build_family(local, n);
  const LaxQuantities lq = compute_lax(fam, n);
  return evolve_ode(lq.B, lq.weight_alpha, n, flow_state(lq), s1, opt);
}

std::vector<BootstrapStep> bootstrap_discrete(const WeightSpec& spec, int n_max, std::optional<CMatrix> a0,
                                              const Family* reference, Real guard) {
  if (n_max < 0) throw InvalidArgument("bootstrap_discrete: n_max must be non-negative");
  if (!(spec.s > 0)) throw InvalidArgument("bootstrap_discrete: s must be positive");
  WeightSpec local = spec;
  local.normalize_gamma0 = true;
  const Weight w(local);
  if (reference && !reference->weight().normalized())
    throw InvalidArgument("bootstrap_discrete: reference family must use the gamma_0 = I frame");

  const Eigen::Index N = w.dim();
  const CMatrix I = identity(N);
  const CMatrix& B = w.B();
  const Real s = w.s();
  const Real al = w.alpha();

  BootstrapStep st;
  st.n = 0;
  st.a = a0 ? *a0 : CMatrix(s * w.moment(-1) * inverse(w.moment(0)));
  st.b = zeros(N);
  st.Bn = B;
  st.Bhat = B;

  auto finish = [&](BootstrapStep& x) { x.alpha_rec = (2.0L * x.n + al + 1) * I + x.a + B + x.Bn.adjoint(); };
  auto compare = [&](const BootstrapStep& x) {
    if (!reference || x.n > reference->n_max()) return;
    const LaxQuantities lq = compute_lax(*reference, x.n);
    auto rel = [](const CMatrix& u, const CMatrix& v) { return fro_norm(u - v) / (1.0L + fro_norm(v)); };
    const Real worst = std::max({rel(x.a, lq.a), rel(x.b, lq.b), rel(x.Bn, lq.Bn), rel(x.Bhat, lq.Bhat)});
    if (!(worst <= guard))
      throw IterationDiverged("bootstrap_discrete: step " + std::to_string(x.n) + " departs from quadrature by " +
                              std::to_string(static_cast<double>(worst)));
  };

  finish(st);
  compare(st);
  std::vector<BootstrapStep> out{st};
  CMatrix tele_sum = zeros(N);
  for (int n = 0; n < n_max; ++n) {
    const BootstrapStep& c = out.back();
    const CMatrix& a = c.a;
    BootstrapStep nx;
    nx.n = n + 1;
    // (1) b_{n+1} from the first first-order difference equation
    const CMatrix rhs = s * a - (2.0L * n + al + 1) * a * a - a * a * a - a * (B + c.Bn.adjoint()) * a - c.b * a;
    nx.b = solve(a, rhs);
    // (2) Bhat_{n+1}
    const CMatrix S = s * I - nx.b;
    nx.Bhat = right_solve(S * solve(a, c.Bhat * a), S);
    // (3) beta_{n+1} by the telescoped sum, then B_{n+1}
    const CMatrix t = a + c.Bn.adjoint();
    tele_sum += t + commutator(B, t);
    const Complex m(n + 1);
    const CMatrix beta = m * ((n + 1 + al) * I + B) + nx.b + tele_sum;
    nx.beta_rec = beta;
    nx.Bn = solve(beta.adjoint(), c.Bn * beta.adjoint());
    // (4) a_{n+1} from dP3
    nx.a = right_solve(nx.b * nx.b - s * nx.b, beta * a);
    finish(nx);
    compare(nx);
    out.push_back(nx);
  }
  return out;
}

std::string to_string(InitialRoute r) { return r == InitialRoute::overlap ? "overlap" : "quadrature"; }

std::pair<CMatrix, CMatrix> initial_derivatives(const WeightSpec& spec, int n, InitialRoute route) {
  if (n < 0) throw InvalidArgument("initial_derivatives: n must be non-negative");
  WeightSpec local = spec.with_s(0);
  local.normalize_gamma0 = false;
  const Eigen::Index N = local.N;
  const Real al = local.alpha;

  if (route == InitialRoute::overlap) {
    if (!local.tt_poly || local.tt_poly->size() != 1)
      throw InvalidArgument("initial_derivatives: overlap route needs a constant T T*");
    validate(local);
    const CMatrix I = identity(N);
    const CMatrix adot = laguerre_overlap(n, n, al, al, al) / laguerre_overlap(n, n, al, al, al + 1) * I;
    if (n == 0) return {adot, zeros(N)};
    const CMatrix bdot = laguerre_overlap(n, n - 1, al, al, al) / laguerre_overlap(n - 1, n - 1, al, al, al + 1) * I;
    return {adot, bdot};
  }

  // The k = -1 moment at s = 0 throws DivergentMoment when it does not exist.
  const Family fam = build_family(local, n);
  (void)fam.weight().moment(-1);
  auto integrand = [&](Real y) -> CMatrix { return fam.eval(n, Complex(y)) * fam.weight().eval(y) / Complex(y); };
  const CMatrix jn = quad::integrate_half_line<CMatrix>(integrand, zeros(N)).value;
  const CMatrix adot = jn * fam.at_zero(n).adjoint() * fam.gamma(n);
  if (n == 0) return {adot, zeros(N)};
  const CMatrix bdot = jn * fam.at_zero(n - 1).adjoint() * fam.gamma(n - 1);
  return {adot, bdot};
}

}  // namespace mvop
