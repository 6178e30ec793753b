#include "mvop/special_family.hpp"

#include <cmath>
#include <string>

namespace mvop {

DG1Family build_dg1(const std::vector<Complex>& nu, Real alpha) {
  if (!std::isfinite(alpha)) throw InvalidArgument("build_dg1: alpha must be finite");
  const int N = static_cast<int>(nu.size()) + 1;
  for (std::size_t k = 0; k < nu.size(); ++k)
    if (std::abs(nu[k]) == 0) throw DegenerateParameters("build_dg1: nu_" + std::to_string(k + 1) + " vanishes");

  DG1Family f;
  f.N = N;
  f.alpha = alpha;
  f.nu = nu;
  f.J = zeros(N);
  f.L = zeros(N);
  f.c.resize(N);
  for (int i = 0; i < N; ++i) {
    const Real j = N - 1 - i;
    f.J(i, i) = j;
    f.c[i] = j * j + alpha * j;
  }
  for (int k = 0; k + 1 < N; ++k) f.L(k, k + 1) = nu[k];
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (std::abs(f.c[i] - f.c[j]) < 1e-12L * (1 + std::abs(f.c[i])))
        throw DegenerateParameters("build_dg1: coincident diagonal entries of J^2 + alpha J");

  f.Z = identity(N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      Complex p = 1;
      for (int l = 1; l <= j - i; ++l) p *= nu[i + l - 1] / (f.c[i + l] - f.c[i]);
      f.Z(i, j) = p;
    }
  // Z is unit upper-triangular; a triangular solve is exact enough here.
  const CMatrix Zi = f.Z.triangularView<Eigen::UnitUpper>().solve(identity(N));
  f.B = f.Z * f.J * Zi;
  f.B0 = f.Z * f.L * Zi;
  return f;
}

WeightSpec dg1_weight_spec(const DG1Family& f, Real s) {
  const int N = f.N;
  const CMatrix Zi = f.Z.triangularView<Eigen::UnitUpper>().solve(identity(N));
  std::vector<CMatrix> P(N);
  for (int k = 0; k < N; ++k) P[k] = f.Z.col(k) * Zi.row(k);
  std::vector<CMatrix> tt(2 * (N - 1) + 1, zeros(N));
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) tt[(N - 1 - j) + (N - 1 - k)] += P[j] * P[k].adjoint();
  // Round-off from the products would fail the Hermiticity check for large nu.
  for (CMatrix& c : tt) c = (0.5L * (c + c.adjoint())).eval();

  WeightSpec spec;
  spec.N = N;
  spec.alpha = f.alpha;
  spec.s = s;
  spec.B = f.B;
  spec.tt_poly = std::move(tt);
  spec.dg1 = DG1Params{f.nu};
  return spec;
}

WeightSpec dg1_weight_spec(const std::vector<Complex>& nu, Real alpha, Real s) {
  return dg1_weight_spec(build_dg1(nu, alpha), s);
}

ResidualReport verify_dg1_invariants(const DG1Family& f, Real tol) {
  ResidualReport r("dg1_invariants", 0, 0);
  const CMatrix& B = f.B;
  const CMatrix& B0 = f.B0;
  const CMatrix X = B * B + f.alpha * B - B0;
  r.check("commutator_B_B0", commutator(B, B0), B0, tol);
  r.check_zero("hermitian_B2_alphaB_minus_B0", X - X.adjoint(), fro_norm(X), tol);

  CMatrix pw = identity(f.N);
  for (int k = 0; k < f.N; ++k) pw = pw * B0;
  r.check_zero("B0_nilpotent", pw, std::pow(fro_norm(B0), f.N), tol);

  Real lower = 0;
  Real diag = 0;
  for (int i = 0; i < f.N; ++i) {
    diag += std::norm(f.Z(i, i) - Complex(1));
    for (int j = 0; j < i; ++j) lower += std::norm(f.Z(i, j));
  }
  r.record("Z_unit_upper_triangular", std::sqrt(lower + diag), 1, tol);

  const Complex i(0, 1);
  Real worst = 0;
  Real ref = 0;
  for (int k = 1; k <= 10; ++k) {
    const Real z = k;
    const CMatrix zb = mat_power_log(B, z);
    const CMatrix lhs = right_solve(zb * (i * X / Complex(z)), zb);
    const CMatrix rhs = i * ((B * B + f.alpha * B) / Complex(z) - B0);
    worst = std::max(worst, fro_norm(lhs - rhs));
    ref = std::max(ref, fro_norm(rhs));
  }
  r.record("H_conjugation", worst, ref, tol);
  return r;
}

ResidualReport verify_section_final(const DG1Family& f, const std::vector<LaxQuantities>& chain, int n, Real tol) {
  if (n < 0 || n + 1 >= static_cast<int>(chain.size()))
    throw IndexError("verify_section_final: chain must cover n+1");
  const LaxQuantities& c = chain[n];
  if (fro_norm(c.B - f.B) > 1e-10L * (1 + fro_norm(f.B)))
    throw InvalidArgument("verify_section_final: chain was not built on this family's B (normalized weight?)");
  ResidualReport r("section_final", n, c.s);
  const CMatrix I = identity(f.N);
  const CMatrix& B = c.B;
  const CMatrix& B0 = f.B0;
  const Real al = f.alpha;
  const Real s = c.s;

  auto Lk = [&](int k) { return CMatrix(chain[k].gamma_n * B0 * chain[k].gamma_n_inv); };
  auto E = [&](int k) { return CMatrix(B0 - Lk(k).adjoint()); };

  const CMatrix Ln = Lk(n);
  CMatrix pw = identity(f.N);
  for (int k = 0; k < f.N; ++k) pw = pw * Ln;
  r.check_zero("L_n_nilpotent", pw, std::pow(fro_norm(Ln), f.N), tol);

  const CMatrix& a = c.a;
  const CMatrix& b = c.b;
  const CMatrix ai = inverse(a);
  const CMatrix S = s * I - b;
  const CMatrix& anc = c.an_coeff;
  const CMatrix X = B * B + al * B + commutator(B0, anc);
  const CMatrix Y = c.Bn * c.Bn + al * c.Bn + commutator(Ln, c.gamma_n * anc * c.gamma_n_inv);
  const CMatrix Ys = Y.adjoint();
  const CMatrix& alpha_n = c.alpha_rec;
  const CMatrix& Bh = c.Bhat;

  r.check("relation_2", S * E(n) - E(n) * ai * b * a, X * a - a * Ys, tol);
  r.check("relation_4", X - Ys, B0 * alpha_n - alpha_n * Ln.adjoint(), tol);
  r.check("reduction", Bh * Bh + al * Bh, X + E(n) * ai * b, tol);
  if (n == 0) {
    for (const char* id : {"relation_1", "relation_3", "relation_5", "relation_6"})
      r.skip(id, "needs beta_0 or L_{-1}");
    return r;
  }
  const CMatrix& beta = *c.beta_rec;
  const LaxQuantities& nx = chain[n + 1];
  r.check("relation_1", a * beta * E(n - 1) + E(n) * ai * b * S, commutator(X, b), tol);
  r.check("relation_3", E(n + 1) * (*nx.beta_rec) - beta * E(n - 1),
          commutator(X, alpha_n) + commutator(alpha_n, B0 * alpha_n), tol);
  r.check("relation_5", a * beta * E(n - 1) - S * E(n) * ai * b + s * (Bh * Bh + al * Bh), S * X + a * Ys * ai * b,
          tol);
  r.check("relation_6", ai * b * X - Ys * ai * b, -(beta * E(n - 1) + ai * b * E(n) * ai * b), tol);
  return r;
}

}  // namespace mvop
