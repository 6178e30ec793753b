#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mvop/linalg.hpp"
#include "mvop/weight.hpp"

namespace mvop {

class ResidualReport;

/// Monic matrix orthogonal polynomials Phat_n(x) = x^n I + sum_j a_{n,j} x^j
/// for one weight at one value of s, with norms and recursion coefficients.
///
/// Conventions:
///   integral Phat_n W Phat_m^* dx = gamma_n^{-1} delta_{nm}
///   x Phat_n = Phat_{n+1} + alpha_n Phat_n + beta_n Phat_{n-1}
///   alpha_n = a_{n,n-1} - a_{n+1,n}   (a_{0,-1} = 0)
///   beta_n  = gamma_n^{-1} gamma_{n-1} (n >= 1)
class Family {
 public:
  /// Solves the block-Hankel systems for degrees 0..n_max (plus one look-ahead
  /// degree so that alpha_{n_max} exists). Throws SingularMoment when a
  /// row-equilibrated Hankel block is numerically singular.
  static Family build(std::shared_ptr<const Weight> weight, int n_max);

  const Weight& weight() const { return *weight_; }
  std::shared_ptr<const Weight> weight_ptr() const { return weight_; }
  int n_max() const { return n_max_; }
  int dim() const { return weight_->dim(); }
  Real s() const { return weight_->s(); }

  /// a_{n,j} for j < n.
  const CMatrix& coeff(int n, int j) const;
  /// a_{n,n-1}; zero for n = 0.
  CMatrix leading_subcoeff(int n) const;
  const CMatrix& gamma(int n) const;
  const CMatrix& gamma_inv(int n) const;
  /// alpha_n, 0 <= n <= n_max.
  const CMatrix& alpha_rec(int n) const;
  /// beta_n, 1 <= n <= n_max.
  const CMatrix& beta_rec(int n) const;

  /// Phat_n(x) by Horner's rule.
  CMatrix eval(int n, Complex x) const;
  /// Phat_n(0) = a_{n,0} (I for n = 0).
  CMatrix at_zero(int n) const;
  /// integral Phat_n(y) W(y) / y dy, assembled from moments M_{j-1}.
  CMatrix inverse_moment_integral(int n) const;
  /// integral W(y) Phat_n^*(y) / y dy.
  CMatrix inverse_moment_integral_adjoint(int n) const;

  /// Largest condition estimate met across the equilibrated Hankel solves.
  Real max_hankel_condition() const { return max_condition_; }

 private:
  Family() = default;
  void check_degree(int n, int upper, const char* what) const;

  std::shared_ptr<const Weight> weight_;
  int n_max_ = 0;
  // coeffs_[n] holds a_{n,0..n-1}, for n = 0..n_max+1.
  std::vector<std::vector<CMatrix>> coeffs_;
  std::vector<CMatrix> gamma_;
  std::vector<CMatrix> gamma_inv_;
  std::vector<CMatrix> alpha_;
  std::vector<CMatrix> beta_;
  Real max_condition_ = 1.0L;
};

/// Convenience: validate spec, build weight and family.
Family build_family(const WeightSpec& spec, int n_max);

/// Max-over-pairs check of the orthogonality relations by direct quadrature
/// of Phat_n W Phat_m^* (independent of the moment route). One entry per
/// (n, m) pair; the reference scale is sqrt(|gamma_n^{-1}| |gamma_m^{-1}|).
ResidualReport orthogonality_residual(const Family& fam, Real tolerance);

}  // namespace mvop
