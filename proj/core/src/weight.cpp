#include "mvop/weight.hpp"

#include <cmath>
#include <string>

#include "mvop/quadrature.hpp"
#include "mvop/specfun.hpp"

namespace mvop {

namespace {

constexpr Real kHermitianTol = 1e-12L;

CMatrix tt_value(const std::vector<CMatrix>& c, Real x) {
  CMatrix acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = (acc * Complex(x)).eval() + c[i];
  return acc;
}

// Smallest exponent sigma - 1 of x near the origin in x^k W(x), used to
// decide integrability at s = 0.
Real origin_exponent(const WeightSpec& spec, int k) {
  if (spec.tt_poly) {
    const auto& c = *spec.tt_poly;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (fro_norm(c[j]) > 0) return spec.alpha + k + static_cast<Real>(j);
    return spec.alpha + k;
  }
  Real min_re = std::numeric_limits<Real>::infinity();
  const auto ev = eigenvalues(spec.B);
  for (Eigen::Index i = 0; i < ev.size(); ++i) min_re = std::min(min_re, ev[i].real());
  return spec.alpha + k + 2.0L * min_re;
}

}  // namespace

WeightSpec scalar_laguerre_spec(Real alpha, Real s) {
  WeightSpec spec;
  spec.N = 1;
  spec.alpha = alpha;
  spec.s = s;
  spec.B = CMatrix::Zero(1, 1);
  spec.tt_poly = std::vector<CMatrix>{CMatrix::Identity(1, 1)};
  return spec;
}

void validate(const WeightSpec& spec) {
  if (spec.N < 1) throw InvalidArgument("weight: N must be positive");
  if (!(spec.alpha > 0) || !std::isfinite(spec.alpha)) throw InvalidArgument("weight: alpha must be positive");
  if (!(spec.s >= 0) || !std::isfinite(spec.s)) throw InvalidArgument("weight: s must be non-negative");
  if (spec.B.rows() != spec.N || spec.B.cols() != spec.N) throw InvalidArgument("weight: B must be N x N");
  if (!all_finite(spec.B)) throw InvalidArgument("weight: B has non-finite entries");
  if (spec.tt_poly) {
    const auto& c = *spec.tt_poly;
    if (c.empty()) throw InvalidArgument("weight: tt_poly is empty");
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k].rows() != spec.N || c[k].cols() != spec.N)
        throw InvalidArgument("weight: tt_poly[" + std::to_string(k) + "] must be N x N");
      if (!all_finite(c[k])) throw InvalidArgument("weight: tt_poly has non-finite entries");
      if (hermitian_defect(c[k]) > kHermitianTol * (1.0L + fro_norm(c[k])))
        throw InvalidArgument("weight: tt_poly[" + std::to_string(k) + "] is not Hermitian");
    }
    for (Real x : {1e-4L, 1e-2L, 0.1L, 0.5L, 1.0L, 2.0L, 5.0L, 10.0L, 1e2L, 1e4L}) {
      CMatrix v = tt_value(c, x);
      v = (0.5L * (v + v.adjoint())).eval();
      Eigen::LLT<CMatrix> llt(v);
      if (llt.info() != Eigen::Success)
        throw InvalidArgument("weight: T(x)T*(x) is not positive definite at x=" + std::to_string(static_cast<double>(x)));
    }
  }
}

CMatrix eval_weight(const WeightSpec& spec, Real x) {
  if (!(x > 0) || !std::isfinite(x)) throw InvalidArgument("eval_weight: x must be positive");
  const Real scalar = std::exp(spec.alpha * std::log(x) - x - spec.s / x);
  if (spec.tt_poly) return tt_value(*spec.tt_poly, x) * Complex(scalar);
  const CMatrix t = mat_power_log(spec.B, x);
  return (t * t.adjoint()) * Complex(scalar);
}

CMatrix matrix_moment(const WeightSpec& spec, int k) {
  if (k < -1) throw InvalidArgument("matrix_moment: k must be >= -1");
  if (spec.s == 0 && origin_exponent(spec, k) <= -1.0L)
    throw DivergentMoment("matrix_moment: moment k=" + std::to_string(k) + " diverges at s=0");
  if (!spec.tt_poly) return matrix_moment_by_quadrature(spec, k);
  const auto& c = *spec.tt_poly;
  CMatrix acc = zeros(spec.N);
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (fro_norm(c[j]) == 0) continue;
    acc += c[j] * Complex(scalar_moment(spec.alpha + k + static_cast<Real>(j) + 1.0L, spec.s));
  }
  return acc;
}

CMatrix matrix_moment_by_quadrature(const WeightSpec& spec, int k) {
  if (k < -1) throw InvalidArgument("matrix_moment: k must be >= -1");
  if (spec.s == 0 && origin_exponent(spec, k) <= -1.0L)
    throw DivergentMoment("matrix_moment: moment k=" + std::to_string(k) + " diverges at s=0");
  auto f = [&](Real x) -> CMatrix { return eval_weight(spec, x) * Complex(std::pow(x, static_cast<Real>(k))); };
  return quad::integrate_half_line<CMatrix>(f, zeros(spec.N)).value;
}

Weight::Weight(WeightSpec spec) : spec_(std::move(spec)), cache_(std::make_shared<Cache>()) {
  validate(spec_);
  scale_ = identity(spec_.N);
  b_eff_ = spec_.B;
  if (spec_.normalize_gamma0) {
    const CMatrix m0 = matrix_moment(spec_, 0);
    scale_ = hermitian_inverse_sqrt(m0);
    b_eff_ = right_solve(scale_ * spec_.B, scale_);
  }
}

CMatrix Weight::eval(Real x) const {
  const CMatrix w = eval_weight(spec_, x);
  if (!spec_.normalize_gamma0) return w;
  return scale_ * w * scale_.adjoint();
}

CMatrix Weight::moment(int k) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->moments.find(k);
    if (it != cache_->moments.end()) return it->second;
  }
  CMatrix m = matrix_moment(spec_, k);
  if (spec_.normalize_gamma0) m = (scale_ * m * scale_.adjoint()).eval();
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->moments.emplace(k, m);
  return m;
}

}  // namespace mvop
