#include "mvop/linalg.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace mvop {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::singular_matrix: return "SingularMatrix";
    case ErrorKind::singular_moment: return "SingularMoment";
    case ErrorKind::divergent_moment: return "DivergentMoment";
    case ErrorKind::degenerate_parameters: return "DegenerateParameters";
    case ErrorKind::step_failure: return "StepFailure";
    case ErrorKind::iteration_diverged: return "IterationDiverged";
    case ErrorKind::index_out_of_range: return "IndexError";
  }
  return "Error";
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }
CMatrix zeros(Eigen::Index n) { return CMatrix::Zero(n, n); }

Real fro_norm(const CMatrix& m) { return m.norm(); }

Real hermitian_defect(const CMatrix& m) { return (m - m.adjoint()).norm(); }

Real skew_hermitian_defect(const CMatrix& m) { return (m + m.adjoint()).norm(); }

bool all_finite(const CMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

Real condition_estimate(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw InvalidArgument("condition_estimate: matrix must be square and non-empty");
  Eigen::PartialPivLU<CMatrix> lu(m);
  const Real rc = lu.rcond();
  if (!(rc > 0) || !std::isfinite(rc)) return std::numeric_limits<Real>::infinity();
  return 1.0L / rc;
}

namespace {

void check_system(const CMatrix& m, const CMatrix& rhs, bool left) {
  if (m.rows() != m.cols()) throw InvalidArgument("solve: matrix is not square");
  if ((left && rhs.rows() != m.rows()) || (!left && rhs.cols() != m.rows()))
    throw InvalidArgument("solve: dimension mismatch");
  if (!all_finite(m) || !all_finite(rhs)) throw InvalidArgument("solve: non-finite input");
}

}  // namespace

CMatrix solve(const CMatrix& m, const CMatrix& rhs) {
  check_system(m, rhs, true);
  Eigen::PartialPivLU<CMatrix> lu(m);
  const Real rc = lu.rcond();
  if (!(rc * kConditionLimit >= 1.0L))
    throw SingularMatrix("solve: condition estimate " + std::to_string(static_cast<double>(1.0L / rc)) +
                         " exceeds limit");
  return lu.solve(rhs);
}

CMatrix right_solve(const CMatrix& rhs, const CMatrix& m) {
  check_system(m, rhs, false);
  // X M = R  <=>  M^T X^T = R^T
  return solve(m.transpose(), rhs.transpose()).transpose();
}

CMatrix inverse(const CMatrix& m) { return solve(m, identity(m.rows())); }

CMatrix mat_power_log(const CMatrix& b, Real x) {
  if (!(x > 0) || !std::isfinite(x)) throw InvalidArgument("mat_power_log: x must be positive and finite");
  if (b.rows() != b.cols()) throw InvalidArgument("mat_power_log: matrix is not square");
  if (!all_finite(b)) throw InvalidArgument("mat_power_log: non-finite matrix");
  if (x == 1.0L) return identity(b.rows());
  const CMatrix scaled = b * Complex(std::log(x), 0.0L);
  return scaled.exp();
}

CMatrix hermitian_inverse_sqrt(const CMatrix& m) {
  if (hermitian_defect(m) > 1e-10L * (1.0L + fro_norm(m)))
    throw InvalidArgument("hermitian_inverse_sqrt: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const RVector& ev = es.eigenvalues();
  if (ev.minCoeff() <= 0) throw SingularMatrix("hermitian_inverse_sqrt: matrix is not positive definite");
  if (ev.maxCoeff() / ev.minCoeff() > kConditionLimit)
    throw SingularMatrix("hermitian_inverse_sqrt: condition exceeds limit");
  RVector inv_sqrt = ev.array().rsqrt();
  return es.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::Matrix<Complex, Eigen::Dynamic, 1> eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  return es.eigenvalues();
}

BlockMatrix BlockMatrix::zero(Eigen::Index n) { return {zeros(n), zeros(n), zeros(n), zeros(n)}; }

BlockMatrix BlockMatrix::identity(Eigen::Index n) {
  return {mvop::identity(n), zeros(n), zeros(n), mvop::identity(n)};
}

BlockMatrix BlockMatrix::sigma3(Eigen::Index n) {
  return {mvop::identity(n), zeros(n), zeros(n), -mvop::identity(n)};
}

BlockMatrix BlockMatrix::from_dense(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) throw InvalidArgument("BlockMatrix: dense matrix must be 2N x 2N");
  const Eigen::Index n = m.rows() / 2;
  return {m.topLeftCorner(n, n), m.topRightCorner(n, n), m.bottomLeftCorner(n, n), m.bottomRightCorner(n, n)};
}

CMatrix BlockMatrix::to_dense() const {
  const Eigen::Index n = dim();
  CMatrix out(2 * n, 2 * n);
  out << b11, b12, b21, b22;
  return out;
}

BlockMatrix BlockMatrix::operator+(const BlockMatrix& o) const {
  return {b11 + o.b11, b12 + o.b12, b21 + o.b21, b22 + o.b22};
}

BlockMatrix BlockMatrix::operator-(const BlockMatrix& o) const {
  return {b11 - o.b11, b12 - o.b12, b21 - o.b21, b22 - o.b22};
}

BlockMatrix BlockMatrix::operator*(const BlockMatrix& o) const {
  return {b11 * o.b11 + b12 * o.b21, b11 * o.b12 + b12 * o.b22,
          b21 * o.b11 + b22 * o.b21, b21 * o.b12 + b22 * o.b22};
}

BlockMatrix BlockMatrix::operator*(Complex c) const { return {b11 * c, b12 * c, b21 * c, b22 * c}; }

Real fro_norm(const BlockMatrix& m) {
  return std::sqrt(m.b11.squaredNorm() + m.b12.squaredNorm() + m.b21.squaredNorm() + m.b22.squaredNorm());
}

}  // namespace mvop
