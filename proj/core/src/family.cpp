#include "mvop/family.hpp"

#include <cmath>
#include <string>

#include "mvop/quadrature.hpp"
#include "mvop/report.hpp"

namespace mvop {

Family Family::build(std::shared_ptr<const Weight> weight, int n_max) {
  if (!weight) throw InvalidArgument("build_family: null weight");
  if (n_max < 0) throw InvalidArgument("build_family: n_max must be non-negative");
  Family fam;
  fam.weight_ = std::move(weight);
  fam.n_max_ = n_max;
  const Weight& w = *fam.weight_;
  const Eigen::Index N = w.dim();
  const int top = n_max + 1;

  std::vector<CMatrix> mom;
  mom.reserve(static_cast<std::size_t>(2 * top + 1));
  for (int k = 0; k <= 2 * top; ++k) mom.push_back(w.moment(k));

  fam.coeffs_.assign(static_cast<std::size_t>(top) + 1, {});
  for (int n = 1; n <= top; ++n) {
    // Right orthogonality to x^i, i < n:  sum_j a_{n,j} M_{j+i} = -M_{n+i}.
    // With X = [a_{n,0} .. a_{n,n-1}] this is X H = R, H_{(j,i)} = M_{j+i}.
    const Eigen::Index size = n * N;
    CMatrix hankel(size, size);
    CMatrix rhs(N, size);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) hankel.block(j * N, i * N, N, N) = mom[static_cast<std::size_t>(j + i)];
    for (int i = 0; i < n; ++i) rhs.block(0, i * N, N, N) = -mom[static_cast<std::size_t>(n + i)];

    // Symmetric diagonal equilibration: moments grow factorially with k.
    RVector d(size);
    for (Eigen::Index r = 0; r < size; ++r) d[r] = 1.0L / std::sqrt(std::abs(hankel(r, r)));
    const Eigen::Matrix<Complex, Eigen::Dynamic, 1> dc = d.cast<Complex>();
    const auto dd = dc.asDiagonal();
    const CMatrix scaled = dd * hankel * dd;
    const Real cond = condition_estimate(scaled);
    fam.max_condition_ = std::max(fam.max_condition_, cond);
    if (!(cond <= kConditionLimit))
      throw SingularMoment("build_family: block-Hankel system of degree " + std::to_string(n) +
                           " is numerically singular (condition " + std::to_string(static_cast<double>(cond)) +
                           ")");
    // X H = R  =>  (X D^{-1}) (D H D) = R D
    const CMatrix y = right_solve(rhs * dd, scaled);
    const CMatrix x = y * dd;
    auto& row = fam.coeffs_[static_cast<std::size_t>(n)];
    row.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) row.push_back(x.block(0, j * N, N, N));
  }

  // gamma_n^{-1} = integral Phat_n W x^n = sum_j a_{n,j} M_{j+n} + M_{2n}
  for (int n = 0; n <= top; ++n) {
    CMatrix g_inv = mom[static_cast<std::size_t>(2 * n)];
    for (int j = 0; j < n; ++j)
      g_inv += fam.coeffs_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] * mom[static_cast<std::size_t>(j + n)];
    fam.gamma_inv_.push_back(g_inv);
    fam.gamma_.push_back(inverse(g_inv));
  }
  for (int n = 0; n <= n_max; ++n) {
    fam.alpha_.push_back(fam.leading_subcoeff(n) - fam.leading_subcoeff(n + 1));
    fam.beta_.push_back(n == 0 ? zeros(N)
                               : CMatrix(fam.gamma_inv_[static_cast<std::size_t>(n)] *
                                         fam.gamma_[static_cast<std::size_t>(n - 1)]));
  }
  return fam;
}

void Family::check_degree(int n, int upper, const char* what) const {
  if (n < 0 || n > upper)
    throw IndexError(std::string(what) + ": degree " + std::to_string(n) + " outside [0, " + std::to_string(upper) + "]");
}

const CMatrix& Family::coeff(int n, int j) const {
  check_degree(n, n_max_ + 1, "coeff");
  if (j < 0 || j >= n) throw IndexError("coeff: j out of range");
  return coeffs_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
}

CMatrix Family::leading_subcoeff(int n) const {
  check_degree(n, n_max_ + 1, "leading_subcoeff");
  if (n == 0) return zeros(dim());
  return coeffs_[static_cast<std::size_t>(n)].back();
}

const CMatrix& Family::gamma(int n) const {
  check_degree(n, n_max_ + 1, "gamma");
  return gamma_[static_cast<std::size_t>(n)];
}

const CMatrix& Family::gamma_inv(int n) const {
  check_degree(n, n_max_ + 1, "gamma_inv");
  return gamma_inv_[static_cast<std::size_t>(n)];
}

const CMatrix& Family::alpha_rec(int n) const {
  check_degree(n, n_max_, "alpha_rec");
  return alpha_[static_cast<std::size_t>(n)];
}

const CMatrix& Family::beta_rec(int n) const {
  check_degree(n, n_max_, "beta_rec");
  if (n == 0) throw IndexError("beta_rec: beta_0 is undefined");
  return beta_[static_cast<std::size_t>(n)];
}

CMatrix Family::eval(int n, Complex x) const {
  check_degree(n, n_max_ + 1, "eval");
  CMatrix acc = identity(dim());
  const auto& row = coeffs_[static_cast<std::size_t>(n)];
  for (int j = n - 1; j >= 0; --j) acc = (acc * x).eval() + row[static_cast<std::size_t>(j)];
  return acc;
}

CMatrix Family::at_zero(int n) const {
  check_degree(n, n_max_ + 1, "at_zero");
  return n == 0 ? identity(dim()) : coeffs_[static_cast<std::size_t>(n)][0];
}

CMatrix Family::inverse_moment_integral(int n) const {
  check_degree(n, n_max_ + 1, "inverse_moment_integral");
  CMatrix acc = weight_->moment(n - 1);
  for (int j = 0; j < n; ++j) acc += coeffs_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] * weight_->moment(j - 1);
  return acc;
}

CMatrix Family::inverse_moment_integral_adjoint(int n) const {
  check_degree(n, n_max_ + 1, "inverse_moment_integral_adjoint");
  CMatrix acc = weight_->moment(n - 1);
  for (int j = 0; j < n; ++j)
    acc += weight_->moment(j - 1) * coeffs_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)].adjoint();
  return acc;
}

Family build_family(const WeightSpec& spec, int n_max) {
  return Family::build(std::make_shared<const Weight>(spec), n_max);
}

ResidualReport orthogonality_residual(const Family& fam, Real tolerance) {
  const int top = fam.n_max();
  const Eigen::Index N = fam.dim();
  const Eigen::Index size = (top + 1) * N;
  // One quadrature pass over the stacked polynomials [Phat_0; ...; Phat_top].
  auto integrand = [&](Real x) -> CMatrix {
    CMatrix stacked(size, N);
    for (int n = 0; n <= top; ++n) stacked.block(n * N, 0, N, N) = fam.eval(n, Complex(x));
    return stacked * fam.weight().eval(x) * stacked.adjoint();
  };
  const CMatrix gram = quad::integrate_half_line<CMatrix>(integrand, CMatrix::Zero(size, size)).value;

  ResidualReport report("orthogonality", 0, fam.s());
  for (int n = 0; n <= top; ++n) {
    for (int m = 0; m <= top; ++m) {
      ResidualReport row("orthogonality", n, fam.s());
      const CMatrix block = gram.block(n * N, m * N, N, N);
      const CMatrix expected = n == m ? fam.gamma_inv(n) : zeros(N);
      const Real ref = std::sqrt(fro_norm(fam.gamma_inv(n)) * fro_norm(fam.gamma_inv(m)));
      row.check_zero("orthogonality_m" + std::to_string(m), block - expected, ref, tolerance);
      report.merge(row);
    }
  }
  return report;
}

}  // namespace mvop
