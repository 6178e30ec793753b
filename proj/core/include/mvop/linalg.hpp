#pragma once

// Dense complex matrix arithmetic for the small (N <= 6) matrices that carry
// the weight, its moments and every derived Lax quantity.
//
// All arithmetic is carried in extended precision (x87 long double on x86-64).
// Block-Hankel solves lose roughly log10(cond) digits and the s-derivative
// checks divide by the finite-difference step, so the extra three digits over
// double keep the verified identities well above the rounding floor.

#include <complex>
#include <span>

#include <Eigen/Dense>

#include "mvop/errors.hpp"

namespace mvop {

using Real = long double;
using Complex = std::complex<Real>;
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

inline constexpr Real kPi = 3.141592653589793238462643383279502884L;
inline constexpr Complex kTwoPiI{0.0L, 2.0L * 3.141592653589793238462643383279502884L};

/// Condition estimate above which solve() reports SingularMatrix.
inline constexpr Real kConditionLimit = 1e12L;

CMatrix identity(Eigen::Index n);
CMatrix zeros(Eigen::Index n);
inline CMatrix adjoint(const CMatrix& m) { return m.adjoint(); }
inline CMatrix commutator(const CMatrix& x, const CMatrix& y) { return x * y - y * x; }

Real fro_norm(const CMatrix& m);

/// ||M - M*||_F
Real hermitian_defect(const CMatrix& m);

/// ||M + M*||_F
Real skew_hermitian_defect(const CMatrix& m);

/// abs / (1 + ref); the one relative-residual convention used in every report.
inline Real relative_residual(Real abs, Real ref) { return abs / (1.0L + ref); }

bool all_finite(const CMatrix& m);

/// Reciprocal 1-norm condition estimate from a partial-pivot LU.
Real condition_estimate(const CMatrix& m);

/// Returns X with M X = rhs. Throws SingularMatrix when the condition
/// estimate exceeds kConditionLimit.
CMatrix solve(const CMatrix& m, const CMatrix& rhs);

/// Returns X with X M = rhs.
CMatrix right_solve(const CMatrix& rhs, const CMatrix& m);

CMatrix inverse(const CMatrix& m);

/// x^B = exp(B log x) for x > 0, by scaling and squaring with Pade
/// approximants.
CMatrix mat_power_log(const CMatrix& b, Real x);

/// M^{-1/2} for a Hermitian positive-definite M.
CMatrix hermitian_inverse_sqrt(const CMatrix& m);

/// Eigenvalues of a general complex matrix.
Eigen::Matrix<Complex, Eigen::Dynamic, 1> eigenvalues(const CMatrix& m);

/// 2x2 grid of equally sized N x N blocks.
struct BlockMatrix {
  CMatrix b11, b12, b21, b22;

  static BlockMatrix zero(Eigen::Index n);
  static BlockMatrix identity(Eigen::Index n);
  /// diag(I_N, -I_N)
  static BlockMatrix sigma3(Eigen::Index n);
  static BlockMatrix from_dense(const CMatrix& m);

  Eigen::Index dim() const { return b11.rows(); }
  CMatrix to_dense() const;

  BlockMatrix operator+(const BlockMatrix& o) const;
  BlockMatrix operator-(const BlockMatrix& o) const;
  BlockMatrix operator*(const BlockMatrix& o) const;
  BlockMatrix operator*(Complex c) const;
};

Real fro_norm(const BlockMatrix& m);

}  // namespace mvop
