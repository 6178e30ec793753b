#include "mvop/lax.hpp"

#include <string>

#include "mvop/quadrature.hpp"

namespace mvop {

LaxQuantities compute_lax(const Family& fam, int n) {
  if (n < 0 || n > fam.n_max()) throw IndexError("compute_lax: n=" + std::to_string(n) + " outside family range");
  if (!(fam.s() > 0)) throw InvalidArgument("compute_lax: s must be positive");
  const Eigen::Index N = fam.dim();
  const Real s = fam.s();
  LaxQuantities lq;
  lq.n = n;
  lq.s = s;
  lq.weight_alpha = fam.weight().alpha();
  lq.B = fam.weight().B();
  lq.P0 = fam.at_zero(n);
  lq.an_coeff = fam.leading_subcoeff(n);
  lq.gamma_n = fam.gamma(n);
  lq.gamma_n_inv = fam.gamma_inv(n);
  lq.alpha_rec = fam.alpha_rec(n);
  if (n > 0) {
    lq.gamma_nm1 = fam.gamma(n - 1);
    lq.beta_rec = fam.beta_rec(n);
  }

  lq.p = fam.inverse_moment_integral(n) * lq.P0.adjoint() / kTwoPiI;
  lq.q = n == 0 ? zeros(N) : CMatrix(right_solve(kTwoPiI * (*lq.gamma_nm1) * fam.at_zero(n - 1), lq.P0));
  lq.a = kTwoPiI * s * lq.p * lq.gamma_n;
  lq.b = s * lq.p * lq.q;
  lq.Bn = lq.gamma_n * lq.B * lq.gamma_n_inv;
  lq.Bhat = right_solve(lq.P0 * lq.B, lq.P0);
  return lq;
}

std::pair<CMatrix, CMatrix> ab_by_quadrature(const Family& fam, int n) {
  if (n < 0 || n > fam.n_max()) throw IndexError("ab_by_quadrature: n out of range");
  const Eigen::Index N = fam.dim();
  const Real s = fam.s();
  auto integrand = [&](Real y) -> CMatrix {
    const CMatrix pn = fam.eval(n, Complex(y));
    const CMatrix pw = pn * fam.weight().eval(y) / Complex(y);
    CMatrix out(N, 2 * N);
    out.leftCols(N) = pw * pn.adjoint();
    out.rightCols(N) = n > 0 ? CMatrix(pw * fam.eval(n - 1, Complex(y)).adjoint()) : zeros(N);
    return out;
  };
  const CMatrix both = quad::integrate_half_line<CMatrix>(integrand, CMatrix::Zero(N, 2 * N)).value;
  CMatrix a = s * both.leftCols(N) * fam.gamma(n);
  CMatrix b = n > 0 ? CMatrix(s * both.rightCols(N) * fam.gamma(n - 1)) : zeros(N);
  return {a, b};
}

LaxMatrices assemble_lax_matrices(const LaxQuantities& lq) {
  const Eigen::Index N = lq.dim();
  const CMatrix I = identity(N);
  const Real s = lq.s;
  const Complex shift(lq.n + lq.weight_alpha / 2.0L);
  const CMatrix g_prev = lq.gamma_nm1 ? *lq.gamma_nm1 : zeros(N);

  LaxMatrices m;
  m.A_minus1 = {shift * I + lq.B, -lq.gamma_n_inv / kTwoPiI, kTwoPiI * g_prev, -shift * I - lq.B.adjoint()};

  const CMatrix& p = lq.p;
  const CMatrix& q = lq.q;
  m.A_minus2 = {(s / 2.0L) * (I - 2.0L * p * q), -s * p, -s * q * (I - p * q), -(s / 2.0L) * (I - 2.0L * q * p)};

  const CMatrix sb = s * I - lq.b;
  m.A_minus2_alt = {(s / 2.0L) * I - lq.b, -(lq.a * lq.gamma_n_inv) / kTwoPiI,
                    -kTwoPiI * lq.gamma_n * solve(lq.a, lq.b * sb), -(s / 2.0L) * I + lq.b.adjoint()};

  m.U0 = {-lq.alpha_rec, lq.gamma_n_inv / kTwoPiI, -kTwoPiI * lq.gamma_n, zeros(N)};
  m.U1 = {I, zeros(N), zeros(N), zeros(N)};

  const CMatrix P0_inv_adj = inverse(lq.P0.adjoint());
  const BlockMatrix left{I, p, -q, I - q * p};
  const BlockMatrix diag{lq.P0, zeros(N), zeros(N), P0_inv_adj};
  m.Q = left * diag;
  const BlockMatrix diag_inv{inverse(lq.P0), zeros(N), zeros(N), lq.P0.adjoint()};
  const BlockMatrix right{I - p * q, -p, q, I};
  m.Q_inv = diag_inv * right;

  m.Y_minus1 = {lq.an_coeff, -lq.gamma_n_inv / kTwoPiI, -kTwoPiI * g_prev, -lq.an_coeff.adjoint()};
  return m;
}

ResidualReport verify_structural(const Family& fam, const LaxQuantities& lq, Real tol) {
  const int n = lq.n;
  const Eigen::Index N = lq.dim();
  const CMatrix I = identity(N);
  ResidualReport r("structural", n, lq.s);

  r.check_zero("gamma_hermitian", lq.gamma_n - lq.gamma_n.adjoint(), fro_norm(lq.gamma_n), tol);
  r.check_zero("p_skew_hermitian", lq.p + lq.p.adjoint(), fro_norm(lq.p), tol);
  r.check_zero("q_skew_hermitian", lq.q + lq.q.adjoint(), fro_norm(lq.q), tol);

  if (n >= 1) {
    // 2 pi i gamma_{n-1} (Phat_{n-1}(0) C(W Phat_n^*)(0) - C(Phat_{n-1} W)(0) Phat_n^*(0)) = I
    const CMatrix c_w_pn = fam.inverse_moment_integral_adjoint(n) / kTwoPiI;
    const CMatrix c_pm_w = fam.inverse_moment_integral(n - 1) / kTwoPiI;
    const CMatrix lof =
        kTwoPiI * (*lq.gamma_nm1) * (fam.at_zero(n - 1) * c_w_pn - c_pm_w * lq.P0.adjoint());
    r.check("liouville_ostrogradski", lof, I, tol);
  } else {
    r.skip("liouville_ostrogradski", "gamma_{-1} undefined at n=0");
  }

  r.check("bb_star", lq.gamma_n_inv * lq.b.adjoint() * lq.gamma_n, solve(lq.a, lq.b * lq.a), tol);

  if (n >= 1) {
    const CMatrix rhs = -(lq.an_coeff + commutator(lq.B, lq.an_coeff));
    r.check("beta_minus_b", *lq.beta_rec - lq.b, rhs, tol);
  } else {
    r.skip("beta_minus_b", "beta_0 undefined");
  }

  const auto [a_quad, b_quad] = ab_by_quadrature(fam, n);
  r.check("a_dual_route", lq.a, a_quad, tol);
  if (n >= 1)
    r.check("b_dual_route", lq.b, b_quad, tol);
  else
    r.check_zero("b_zero_at_n0", lq.b, 0, tol);

  const LaxMatrices m = assemble_lax_matrices(lq);
  r.record("A_minus2_two_forms", fro_norm(m.A_minus2 - m.A_minus2_alt),
           std::max(fro_norm(m.A_minus2), fro_norm(m.A_minus2_alt)), tol);
  const Complex trace = m.A_minus2.b11.trace() + m.A_minus2.b22.trace();
  r.record("A_minus2_traceless", std::abs(trace), fro_norm(m.A_minus2), tol);

  const BlockMatrix qq = m.Q * m.Q_inv;
  r.record("Q_times_Q_inverse", fro_norm(qq - BlockMatrix::identity(N)), 1.0L, tol);

  // Unsimplified lower-right block I + q p^* agrees with I - q p for skew p.
  r.check("Q_simplified_form", I + lq.q * lq.p.adjoint(), I - lq.q * lq.p, tol);

  // A_{-1} = diag((n+alpha/2) I + B, -(n+alpha/2) I - B^*) + [sigma_3, Y_{-1}] / 2
  const Complex shift(n + lq.weight_alpha / 2.0L);
  const BlockMatrix diag{shift * I + lq.B, zeros(N), zeros(N), -shift * I - lq.B.adjoint()};
  const BlockMatrix s3 = BlockMatrix::sigma3(N);
  const BlockMatrix from_y = diag + (s3 * m.Y_minus1 - m.Y_minus1 * s3) * Complex(0.5L);
  r.record("A_minus1_from_Y_minus1", fro_norm(from_y - m.A_minus1), fro_norm(m.A_minus1), tol);

  // Q^{(n)} = Y^{(n)}(s;0): top-left block Phat_n(0), bottom-left -2 pi i gamma_{n-1} Phat_{n-1}(0).
  const CMatrix y21 = n >= 1 ? CMatrix(-kTwoPiI * (*lq.gamma_nm1) * fam.at_zero(n - 1)) : zeros(N);
  r.check("Q_equals_Y_at_zero_11", m.Q.b11, lq.P0, tol);
  r.check("Q_equals_Y_at_zero_12", m.Q.b12, fam.inverse_moment_integral(n) / kTwoPiI, tol);
  r.check("Q_equals_Y_at_zero_21", m.Q.b21, y21, tol);
  return r;
}

}  // namespace mvop
