#pragma once

#include <vector>

#include "mvop/lax.hpp"
#include "mvop/linalg.hpp"
#include "mvop/report.hpp"
#include "mvop/weight.hpp"

namespace mvop {

/// The (B, B0) pair with [B, B0] = B0 and B^2 + alpha B - B0 Hermitian,
/// built as B = Z J Z^{-1}, B0 = Z L Z^{-1} with J = diag(N-1, ..., 0),
/// L = sum nu_k E_{k,k+1} and Z unit upper-triangular.
struct DG1Family {
  int N = 0;
  Real alpha = 0;
  std::vector<Complex> nu;
  CMatrix J, L, Z, B, B0;
  /// Diagonal of J^2 + alpha J.
  std::vector<Real> c;
};

/// Throws DegenerateParameters when some nu_k vanishes or two c_i coincide
/// (possible only for alpha <= 0; the weight itself still needs alpha > 0).
DG1Family build_dg1(const std::vector<Complex>& nu, Real alpha);

/// Weight spec for the family: B from the construction and the polynomial
/// T T* = sum_{j,k} x^{J_j + J_k} P_j P_k^*, P_k = Z E_kk Z^{-1}.
WeightSpec dg1_weight_spec(const DG1Family& f, Real s);
WeightSpec dg1_weight_spec(const std::vector<Complex>& nu, Real alpha, Real s);

/// Construction invariants: commutator, Hermiticity, nilpotency of B0,
/// Z unit upper-triangular, and the conjugation identity
/// z^B (i X / z) z^{-B} = i((B^2 + alpha B)/z - B0), X = B^2 + alpha B - B0,
/// at ten points in (0, 10].
ResidualReport verify_dg1_invariants(const DG1Family& f, Real tolerance);

/// The six relations and the reduction formula for Bhat_n^2 + alpha Bhat_n,
/// plus nilpotency of L_n = gamma_n B0 gamma_n^{-1}. Needs chain[0..n+1]
/// from a family built on dg1_weight_spec without gamma_0 normalization.
ResidualReport verify_section_final(const DG1Family& f, const std::vector<LaxQuantities>& chain, int n,
                                    Real tolerance);

}  // namespace mvop
