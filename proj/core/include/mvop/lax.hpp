#pragma once

#include <optional>

#include "mvop/family.hpp"
#include "mvop/linalg.hpp"
#include "mvop/report.hpp"

namespace mvop {

/// Data of the Lax triple at one (n, s): values of the Riemann-Hilbert
/// solution at z = 0 and the variables of the closed systems.
///
///   p_n = C(Phat_n W)(0) Phat_n^*(0)            (skew-Hermitian)
///   q_n = 2 pi i gamma_{n-1} Phat_{n-1}(0) Phat_n(0)^{-1}   (q_0 = 0)
///   a_n = 2 pi i s p_n gamma_n,  b_n = s p_n q_n
///   B_n = gamma_n B gamma_n^{-1},  Bhat_n = Phat_n(0) B Phat_n(0)^{-1}
struct LaxQuantities {
  int n = 0;
  Real s = 0;
  Real weight_alpha = 0;
  /// Working exponent matrix of the weight.
  CMatrix B;

  CMatrix p, q, a, b;
  CMatrix Bn, Bhat;
  /// Phat_n(s;0)
  CMatrix P0;
  /// a_{n,n-1}
  CMatrix an_coeff;
  CMatrix gamma_n, gamma_n_inv;
  std::optional<CMatrix> gamma_nm1;
  CMatrix alpha_rec;
  std::optional<CMatrix> beta_rec;

  Eigen::Index dim() const { return a.rows(); }
};

/// Requires s > 0 and 0 <= n <= fam.n_max().
LaxQuantities compute_lax(const Family& fam, int n);

/// a_n and b_n from their integral representations
///   a_n = s (integral Phat_n W Phat_n^* / y) gamma_n
///   b_n = s (integral Phat_n W Phat_{n-1}^* / y) gamma_{n-1}
/// evaluated by quadrature (b_0 = 0).
std::pair<CMatrix, CMatrix> ab_by_quadrature(const Family& fam, int n);

struct LaxMatrices {
  BlockMatrix A_minus1;
  /// p/q form.
  BlockMatrix A_minus2;
  /// a/b form.
  BlockMatrix A_minus2_alt;
  /// U(z) = U0 + z U1.
  BlockMatrix U0, U1;
  /// Q^{(n)} = Y^{(n)}(s;0) and its inverse, in the factored forms.
  BlockMatrix Q, Q_inv;
  BlockMatrix Y_minus1;
};

/// Throws SingularMatrix if a_n is not invertible (a/b form of A_{-2}).
LaxMatrices assemble_lax_matrices(const LaxQuantities& lq);

/// Structural identities at one n: Liouville-Ostrogradski at z = 0,
/// skew-Hermiticity of p and q, Hermiticity of gamma_n, the b b^* identity,
/// beta_n - b_n in terms of a_{n,n-1}, the two routes to a_n and b_n, the two
/// forms of A_{-2}, and the block algebra of Q, Y_{-1} and A_{-1}.
ResidualReport verify_structural(const Family& fam, const LaxQuantities& lq, Real tolerance);

}  // namespace mvop
