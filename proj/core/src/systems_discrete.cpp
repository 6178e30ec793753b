#include <string>

#include "mvop/systems.hpp"

namespace mvop {

std::vector<LaxQuantities> compute_lax_chain(const Family& fam) {
  std::vector<LaxQuantities> chain;
  chain.reserve(fam.n_max() + 1);
  for (int n = 0; n <= fam.n_max(); ++n) chain.push_back(compute_lax(fam, n));
  return chain;
}

std::string to_string(DReading r) { return r == DReading::inverse ? "inverse" : "power_n_minus_1"; }

namespace {

void require_chain(const std::vector<LaxQuantities>& chain, int n, const char* what) {
  if (n < 0 || n + 1 >= static_cast<int>(chain.size()))
    throw IndexError(std::string(what) + ": chain must cover n+1 (n=" + std::to_string(n) + ")");
}

CMatrix matrix_power(const CMatrix& m, int k) {
  if (k < 0) return matrix_power(inverse(m), -k);
  CMatrix out = identity(m.rows());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

// C_k = s a^{-1} - a - a B a^{-1} - a b_{k+1} a^{-2} - b_k a^{-1}, a = a_k
CMatrix c_coefficient(const std::vector<LaxQuantities>& chain, int k) {
  const LaxQuantities& c = chain[k];
  const CMatrix ai = inverse(c.a);
  return c.s * ai - c.a - c.a * c.B * ai - c.a * chain[k + 1].b * ai * ai - c.b * ai;
}

CMatrix d_middle(const LaxQuantities& c, DReading reading) {
  if (reading == DReading::inverse) return c.a * c.B * inverse(c.a);
  return c.a * c.B * matrix_power(c.a, c.n - 1);
}

// D_k = (s - b_k)(B + b_k a_{k-1}^{-1}) + (I + a_k + mid + a_k b_{k+1} a_k^{-2}) b_k, D_0 = s B
CMatrix d_coefficient(const std::vector<LaxQuantities>& chain, int k, DReading reading) {
  const LaxQuantities& c = chain[k];
  if (k == 0) return c.s * c.B;
  const CMatrix I = identity(c.dim());
  const CMatrix ai = inverse(c.a);
  return (c.s * I - c.b) * (c.B + right_solve(c.b, chain[k - 1].a)) +
         (I + c.a + d_middle(c, reading) + c.a * chain[k + 1].b * ai * ai) * c.b;
}

}  // namespace

ResidualReport residual_dPsystem(const std::vector<LaxQuantities>& chain, int n, Real tol) {
  require_chain(chain, n, "residual_dPsystem");
  const LaxQuantities& c = chain[n];
  const LaxQuantities& nx = chain[n + 1];
  const CMatrix I = identity(c.dim());
  const CMatrix& B = c.B;
  const Real s = c.s;
  const Real al = c.weight_alpha;
  const CMatrix ai = inverse(c.a);
  ResidualReport r("discrete", n, s);

  r.check("dP1", c.alpha_rec, (2.0L * n + al + 1) * I + c.a + B + c.Bn.adjoint(), tol);
  r.check("dP2", s * I - c.alpha_rec * c.a, nx.b + c.gamma_n_inv * c.b.adjoint() * c.gamma_n, tol);
  r.check("dP3", nx.b * nx.b - s * nx.b, nx.a * (*nx.beta_rec) * c.a, tol);

  if (n == 0) {
    for (const char* id : {"dP4", "dP5", "telescopic_beta", "formal_monodromy", "formal_monodromy_combined"})
      r.skip(id, "needs beta_0 or a_{-1}");
    return r;
  }
  const LaxQuantities& pv = chain[n - 1];
  const CMatrix& beta = *c.beta_rec;
  r.check("dP4", *nx.beta_rec - beta, c.alpha_rec + nx.b - c.b + commutator(B, c.alpha_rec), tol);
  r.check("dP5", nx.a * (*nx.beta_rec) - beta * pv.a, c.alpha_rec * c.b - nx.b * c.alpha_rec, tol);

  CMatrix tele = Complex(n) * ((n + al) * I + B) + c.b;
  for (int k = 0; k < n; ++k) {
    const CMatrix t = chain[k].a + chain[k].Bn.adjoint();
    tele += t + commutator(B, t);
  }
  r.check("telescopic_beta", beta, tele, tol);

  const CMatrix ab = ai * c.b;
  const CMatrix fm = s * (Complex(n) * I + B + ab - c.Bhat) - c.b * ((2.0L * n + al) * I + B) - c.b * ab -
                     c.a * c.Bn.adjoint() * ab;
  r.check("formal_monodromy", c.a * beta, fm, tol);
  const CMatrix comb = s * (Complex(n) * I + B - c.Bhat) - c.b * ((2.0L * n + al) * I + B) -
                       c.a * c.Bn.adjoint() * ab - c.b * ab + ab * c.b;
  r.check("formal_monodromy_combined", c.a * beta + beta * pv.a, comb, tol);
  return r;
}

ResidualReport residual_discrete_closed(const std::vector<LaxQuantities>& chain, int n, Real tol,
                                        DReading reading) {
  require_chain(chain, n, "residual_discrete_closed");
  const LaxQuantities& c = chain[n];
  const CMatrix I = identity(c.dim());
  const CMatrix& B = c.B;
  const Real s = c.s;
  const Real al = c.weight_alpha;
  ResidualReport r("closed_discrete", n, s);
  r.add_note("D_n reading: " + to_string(reading));

  if (n == 0) {
    for (const char* id : {"first_order_1", "first_order_2", "first_order_3", "first_order_4", "second_order_C",
                           "second_order_D", "sBhat_display"})
      r.skip(id, "needs n-1");
    return r;
  }
  const LaxQuantities& pv = chain[n - 1];
  const CMatrix& a = c.a;
  const CMatrix& b = c.b;
  const CMatrix& am = pv.a;
  const CMatrix ai = inverse(a);
  const CMatrix S = s * I - b;
  const CMatrix ab = ai * b;

  r.check("first_order_1", am * b + pv.b * am,
          s * am - (2.0L * n + al - 1) * am * am - am * am * am - am * (B + pv.Bn.adjoint()) * am, tol);
  r.check("first_order_2", b * b - s * b,
          (s * (Complex(n) * I + B - c.Bhat + ab) - b * ((2.0L * n + al) * I + B + ab) - a * c.Bn.adjoint() * ab) * am,
          tol);
  r.check("first_order_3", a * c.Bn.adjoint() * ab * S, b * S * solve(am, pv.Bn.adjoint() * am), tol);
  r.check("first_order_4", c.Bhat * S, S * solve(am, pv.Bhat * am), tol);

  const CMatrix cn = c_coefficient(chain, n);
  const CMatrix cm = c_coefficient(chain, n - 1);
  const CMatrix am2 = am * am;
  r.check("second_order_C", cn * b * S - b * S * solve(am2, cm * am2), 2.0L * b * S, tol);

  const CMatrix dn = d_coefficient(chain, n, reading);
  const CMatrix dm = d_coefficient(chain, n - 1, reading);
  r.check("second_order_D", dn * S - S * solve(am, dm * am), s * (b - s * I), tol);

  const CMatrix sbh = Complex(n * s) * I + S * B - right_solve(b * b - s * b, am) +
                      (I + a + d_middle(c, reading) + a * chain[n + 1].b * ai * ai) * b;
  r.check("sBhat_display", s * c.Bhat, sbh, tol);
  return r;
}

}  // namespace mvop
