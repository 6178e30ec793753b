#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "mvop/linalg.hpp"

namespace mvop {

/// Parameters of the special (B, B0) family; when present they determine B
/// and the polynomial T(x)T*(x) of the weight.
struct DG1Params {
  std::vector<Complex> nu;
};

/// W(s;x) = x^alpha e^{-x-s/x} T(x) T*(x) with T(x) = x^B on (0, inf).
struct WeightSpec {
  int N = 1;
  Real alpha = 1.0L;
  Real s = 0.0L;
  CMatrix B = CMatrix::Zero(1, 1);
  /// Hermitian C_k with T(x)T*(x) = sum_k C_k x^k, when T T* is polynomial.
  std::optional<std::vector<CMatrix>> tt_poly;
  bool normalize_gamma0 = false;
  std::optional<DG1Params> dg1;

  WeightSpec with_s(Real new_s) const {
    WeightSpec out = *this;
    out.s = new_s;
    return out;
  }
};

/// Scalar Laguerre weight x^alpha e^{-x-s/x} (N = 1, B = 0, T T* = 1).
WeightSpec scalar_laguerre_spec(Real alpha, Real s);

/// Throws InvalidArgument on any violated invariant.
void validate(const WeightSpec& spec);

/// W(s;x) for x > 0. Uses tt_poly when present, otherwise x^B (x^B)^*.
CMatrix eval_weight(const WeightSpec& spec, Real x);

/// Integral of x^k W(s;x) over (0, inf), k >= -1. Closed form through
/// MacDonald functions when tt_poly is present, quadrature otherwise.
CMatrix matrix_moment(const WeightSpec& spec, int k);

/// The same moment by double-exponential quadrature of eval_weight; used as
/// an independent check of the closed form.
CMatrix matrix_moment_by_quadrature(const WeightSpec& spec, int k);

/// A validated weight ready for family construction: caches moments and, when
/// normalize_gamma0 is set, carries the constant congruence K = M_0^{-1/2} so
/// that the working weight is K W K* (whose zeroth moment is I) and the
/// working exponent matrix is K B K^{-1}.
class Weight {
 public:
  explicit Weight(WeightSpec spec);

  const WeightSpec& spec() const { return spec_; }
  int dim() const { return spec_.N; }
  Real alpha() const { return spec_.alpha; }
  Real s() const { return spec_.s; }
  bool normalized() const { return spec_.normalize_gamma0; }

  /// Exponent matrix of the working weight (K B K^{-1}; B when not normalized).
  const CMatrix& B() const { return b_eff_; }
  /// Congruence factor K (identity when not normalized).
  const CMatrix& scale() const { return scale_; }

  /// Working weight K W(s;x) K*.
  CMatrix eval(Real x) const;
  /// Working moment K M_k K*; cached.
  CMatrix moment(int k) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<int, CMatrix> moments;
  };

  WeightSpec spec_;
  CMatrix scale_;
  CMatrix b_eff_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace mvop
