#include <algorithm>
#include <cmath>
#include <string>

#include "mvop/systems.hpp"

namespace mvop {

std::string to_string(SecondOrderReading r) { return r == SecondOrderReading::truncated ? "truncated" : "complete"; }

namespace {

std::vector<LaxQuantities> chain_at(const WeightSpec& spec, int n_need, Real s) {
  WeightSpec local = spec.with_s(s);
  local.normalize_gamma0 = false;
  return compute_lax_chain(build_family(local, n_need));
}

// Central first and second differences of a field across a stencil.
struct Diff {
  const SStencil& st;
  CMatrix d1(CMatrix LaxQuantities::*field, int m) const {
    return (st.plus[m].*field - st.minus[m].*field) / (2.0L * st.h);
  }
  CMatrix d2(CMatrix LaxQuantities::*field, int m) const {
    return (st.plus[m].*field - 2.0L * (st.center[m].*field) + st.minus[m].*field) / (st.h * st.h);
  }
  CMatrix d1_opt(std::optional<CMatrix> LaxQuantities::*field, int m) const {
    return (*(st.plus[m].*field) - *(st.minus[m].*field)) / (2.0L * st.h);
  }
};

}  // namespace

SStencil build_stencil(const WeightSpec& spec, int n_need, Real s, Real h) {
  if (!(h > 0)) throw InvalidArgument("build_stencil: h must be positive");
  if (!(s - h > 0)) throw InvalidArgument("build_stencil: s - h must be positive");
  SStencil st;
  st.s = s;
  st.h = h;
  st.minus = chain_at(spec, n_need, s - h);
  st.center = chain_at(spec, n_need, s);
  st.plus = chain_at(spec, n_need, s + h);
  return st;
}

ResidualReport residual_Psystem(const WeightSpec& spec, int n, Real s, Real h, Real tol) {
  if (n < 0) throw InvalidArgument("residual_Psystem: n must be non-negative");
  const SStencil st = build_stencil(spec, n + 1, s, h);
  const Diff d{st};
  const LaxQuantities& c = st.center[n];
  const LaxQuantities& nx = st.center[n + 1];
  const CMatrix I = identity(c.dim());
  const CMatrix& B = c.B;
  const Real al = c.weight_alpha;
  const CMatrix& a = c.a;
  const CMatrix& b = c.b;
  const CMatrix& g = c.gamma_n;
  const CMatrix ai = inverse(a);
  const CMatrix S = s * I - b;
  ResidualReport r("continuous", n, s);

  r.check("P1", s * d.d1(&LaxQuantities::gamma_n, n), g * a, tol);
  if (n >= 1)
    r.check("P2", s * d.d1(&LaxQuantities::gamma_n, n - 1), -g * ai * b * S, tol);
  else
    r.skip("P2", "gamma_{-1} undefined");
  r.check("P3", s * d.d1(&LaxQuantities::a, n),
          (2.0L * n + al + 1) * a + a * a + B * a + a * c.Bn.adjoint() - s * I + b +
              c.gamma_n_inv * b.adjoint() * g,
          tol);
  if (n >= 1)
    r.check("P4", s * d.d1(&LaxQuantities::b, n), b + commutator(B, b) - ai * b * S - a * (*c.beta_rec), tol);
  else
    r.skip("P4", "beta_0 undefined");

  const CMatrix alpha_dot = d.d1(&LaxQuantities::alpha_rec, n);
  r.check("toda_alpha_b", s * alpha_dot, b - nx.b, tol);
  if (n >= 1) {
    r.check("toda_alpha_beta", s * alpha_dot,
            c.alpha_rec - *nx.beta_rec + *c.beta_rec + commutator(B, c.alpha_rec), tol);
    r.check("toda_beta", s * d.d1_opt(&LaxQuantities::beta_rec, n),
            *c.beta_rec * st.center[n - 1].a - a * (*c.beta_rec), tol);
  } else {
    r.skip("toda_alpha_beta", "beta_0 undefined");
    r.skip("toda_beta", "beta_0 undefined");
  }
  r.check("Pdot", s * right_solve(d.d1(&LaxQuantities::P0, n), c.P0), Complex(n) * I + B - c.Bhat + ai * b, tol);
  return r;
}

ResidualReport residual_continuous_closed(const WeightSpec& spec, int n, Real s, Real h1, Real h2,
                                          ClosedTolerances tol, SecondOrderReading reading) {
  if (n < 0) throw InvalidArgument("residual_continuous_closed: n must be non-negative");
  const SStencil st1 = build_stencil(spec, n, s, h1);
  const SStencil st2 = build_stencil(spec, n, s, h2);
  const Diff d1{st1};
  const Diff d2{st2};
  const LaxQuantities& c = st1.center[n];
  const CMatrix I = identity(c.dim());
  const CMatrix& B = c.B;
  const Real al = c.weight_alpha;
  const CMatrix& a = c.a;
  const CMatrix& b = c.b;
  const CMatrix ai = inverse(a);
  const CMatrix ab = ai * b;
  const CMatrix Bns = c.Bn.adjoint();
  const Complex m(2.0L * n + al + 1);
  const Real t1 = tol.first_order;
  ResidualReport r("closed_continuous", n, s);
  r.add_note("second-order reading: " + to_string(reading));

  const CMatrix ad = d1.d1(&LaxQuantities::a, n);
  const CMatrix bd = d1.d1(&LaxQuantities::b, n);
  r.check("first_order_a", s * ad, -s * I + b + (m * I + B + a + ab) * a + a * Bns, t1);
  r.check("first_order_b", s * bd,
          b * (m * I + B + ab) - s * (2.0L * ab + Complex(n) * I + B - c.Bhat) + ai * b * b + commutator(B, b) +
              a * Bns * ab,
          t1);
  r.check("first_order_Bn", s * d1.d1(&LaxQuantities::Bn, n), commutator(a.adjoint(), c.Bn), t1);
  r.check("first_order_Bhat", s * d1.d1(&LaxQuantities::Bhat, n), commutator(ab + B, c.Bhat), t1);

  r.check("recovery_Bn_star", Bns, ai * (s * ad + s * I - b - (m * I + B + a + ab) * a), t1);
  r.check("recovery_Bhat", c.Bhat, bd + Complex(n) * I + B + ab - ad * ab + a * b / s, t1);

  const CMatrix add = d2.d2(&LaxQuantities::a, n);
  const CMatrix bdd = d2.d2(&LaxQuantities::b, n);
  const Real s2 = s * s;
  CMatrix f1 = ad * ai * ad + ad * ai - (commutator(B * a, a) + commutator(ab, a * a)) / s2 +
               (bd - ad + ai * bd * a + ad * a - (ad * ai * ai + ai * ad) * b * a + B * ad - ad * ai * B * a +
                commutator(ab, ad) - I) /
                   s;
  if (reading == SecondOrderReading::complete) f1 += (ai * ad - ai * ad * ai) * b * a / s;
  r.check("second_order_a", add, f1, tol.second_order);

  const CMatrix f2 = (ad * ai + ai * ad) * ai * b + ad * ai * bd - ai * bd + a * (b + commutator(B, b)) / s2 -
                     (a * bd + commutator(bd, B) + ad * ai * commutator(B, b) - ai * (bd * b + b * bd) +
                      (ad * ai * ai + ai * ad * ai) * b * b + ad * ai * b + ab) /
                         s;
  r.check("second_order_b", bdd, f2, tol.second_order);
  return r;
}

std::vector<FdRatio> fd_convergence(const WeightSpec& spec, int n, Real s, Real h, int shifts) {
  const Real loose = 1.0L;
  auto first_order = [&](Real at, Real step) {
    ResidualReport r = residual_Psystem(spec, n, at, step, loose);
    r.merge(residual_continuous_closed(spec, n, at, step, step, {loose, loose}));
    return r;
  };
  const ResidualReport coarse = first_order(s, h);
  const ResidualReport fine = first_order(s, h / 2);
  std::vector<ResidualReport> shifted;
  for (int j = 1; j <= shifts; ++j) shifted.push_back(first_order(s * (1 + 1e-7L * j), h / 2));

  std::vector<FdRatio> out;
  for (const ResidualEntry& e : coarse.entries()) {
    // The second-order pair is not part of the O(h^2) claim.
    if (e.skipped || e.identity.rfind("second_order", 0) == 0) continue;
    const ResidualEntry* f = fine.find(e.identity, e.n);
    if (!f || f->skipped) continue;
    FdRatio q;
    q.identity = e.identity;
    q.h = h;
    q.residual_h = e.rel_residual;
    q.residual_half = f->rel_residual;
    for (const ResidualReport& r : shifted)
      q.noise = std::max(q.noise, std::abs(r.find(e.identity, e.n)->rel_residual - f->rel_residual));
    q.at_floor = 8 * q.noise >= q.residual_half;
    q.ratio = q.residual_half > 0 ? q.residual_h / q.residual_half : 0;
    out.push_back(q);
  }
  return out;
}

PiiiScan scalar_piii_scan(const WeightSpec& spec, int n, const std::vector<Real>& s_grid, Real h) {
  if (spec.N != 1) throw InvalidArgument("scalar_piii: N must be 1");
  if (fro_norm(spec.B) != 0) throw InvalidArgument("scalar_piii: B must vanish");
  if (s_grid.size() < 2) throw InvalidArgument("scalar_piii: grid needs at least two points");
  // First derivatives for the first-order check use a finer step.
  const Real h_first = std::min(h, Real(1e-4L));
  PiiiScan out;
  for (Real s : s_grid) {
    const SStencil st = build_stencil(spec, n, s, h);
    const SStencil sf = build_stencil(spec, n, s, h_first);
    const Complex a = st.center[n].a(0, 0);
    if (std::abs(a) < 1e-14L) throw SingularMatrix("scalar_piii: a_n vanishes at s=" + std::to_string(double(s)));
    const Complex ad = Diff{st}.d1(&LaxQuantities::a, n)(0, 0);
    const Complex add = Diff{st}.d2(&LaxQuantities::a, n)(0, 0);
    const Real al = spec.alpha;
    const Real m = 2.0L * n + al + 1;
    const Real piii = std::abs(add - ad * ad / a + ad / s - m * a * a / (s * s) - a * a * a / (s * s) - al / s +
                               Complex(1) / a);
    const LaxQuantities& c = sf.center[n];
    const Complex adf = Diff{sf}.d1(&LaxQuantities::a, n)(0, 0);
    const Complex b = c.b(0, 0);
    const Complex rhs = m * a + a * a - s + b + std::conj(b);
    const Real p3 = std::abs(s * adf - rhs) / (1.0L + std::max(std::abs(s * adf), std::abs(rhs)));
    out.s.push_back(s);
    out.piii.push_back(piii);
    out.p3.push_back(p3);
    out.max_piii = std::max(out.max_piii, piii);
    out.max_p3 = std::max(out.max_p3, p3);
  }
  return out;
}

Real scalar_piii_residual(const WeightSpec& spec, int n, const std::vector<Real>& s_grid, Real h) {
  return scalar_piii_scan(spec, n, s_grid, h).max_piii;
}

}  // namespace mvop
