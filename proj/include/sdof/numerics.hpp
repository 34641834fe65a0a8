#pragma once

// Dense complex linear algebra used by the precoder construction and rate
// evaluation: SVD null spaces, Hermitian-definite generalized eigenpairs and
// log-determinant rates. Everything is templated on the Eigen scalar so the
// same code serves real and complex matrices.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdof {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Raised when an input is numerically unusable (non-finite entries,
/// indefinite covariance, failed decomposition).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Singular values below this fraction of the largest count as zero.
inline constexpr double kRankTolerance = 1e-10;
/// Cholesky pivots must exceed this fraction of trace / dim.
inline constexpr double kDefiniteTolerance = 1e-12;

template <typename Scalar>
struct NullBasis {
  Matrix<Scalar> basis;  ///< orthonormal columns
  double tol_used = kRankTolerance;

  Eigen::Index dim() const { return basis.cols(); }
};

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) throw NumericalError(std::string(what) + ": non-finite entry");
}

template <typename Derived>
Matrix<typename Derived::Scalar> hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  return (m + m.adjoint()) / typename Derived::RealScalar(2);
}

/// Lower Cholesky factor of a Hermitian matrix, rejecting pivots that are
/// not clearly positive.
template <typename Derived>
Eigen::LLT<Matrix<typename Derived::Scalar>> definite_cholesky(
    const Eigen::MatrixBase<Derived>& m, const char* what) {
  using Real = typename Derived::RealScalar;
  const Eigen::Index n = m.rows();
  Eigen::LLT<Matrix<typename Derived::Scalar>> llt(hermitian_part(m));
  if (n == 0) return llt;
  if (llt.info() != Eigen::Success) {
    throw NumericalError(std::string(what) + ": matrix is not positive definite");
  }
  const Real trace = std::real(m.trace());
  const Real floor = Real(kDefiniteTolerance) * trace / Real(n);
  const auto pivots = llt.matrixLLT().diagonal().real().array().square();
  if (!(trace > Real(0)) || (pivots <= floor).any()) {
    throw NumericalError(std::string(what) + ": matrix is not positive definite");
  }
  return llt;
}

}  // namespace detail

/// Orthonormal basis of {v : m v = 0}.
template <typename Derived>
NullBasis<typename Derived::Scalar> null_basis(const Eigen::MatrixBase<Derived>& m,
                                               double tol_rel = kRankTolerance) {
  using Scalar = typename Derived::Scalar;
  detail::require_finite(m, "null_basis");
  const Eigen::Index cols = m.cols();
  NullBasis<Scalar> out;
  out.tol_used = tol_rel;
  if (m.rows() == 0 || cols == 0) {
    out.basis = Matrix<Scalar>::Identity(cols, cols);
    return out;
  }
  Eigen::JacobiSVD<Matrix<Scalar>> svd(m, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw NumericalError("null_basis: SVD did not converge");
  const auto& sigma = svd.singularValues();
  const double cutoff = tol_rel * static_cast<double>(sigma(0));
  Eigen::Index rank = 0;
  while (rank < sigma.size() && static_cast<double>(sigma(rank)) > cutoff) ++rank;
  out.basis = svd.matrixV().rightCols(cols - rank);
  return out;
}

/// Orthonormal basis of {u : u^H m = 0}.
template <typename Derived>
NullBasis<typename Derived::Scalar> left_null_basis(const Eigen::MatrixBase<Derived>& m,
                                                    double tol_rel = kRankTolerance) {
  return null_basis(m.adjoint(), tol_rel);
}

template <typename Scalar>
struct EigenPair {
  double value = 0.0;
  Vector<Scalar> vector;
};

/// Top-k eigenpairs of a v = lambda b v for Hermitian a and Hermitian positive
/// definite b, in descending order. Eigenvectors are b-orthonormal.
template <typename DerivedA, typename DerivedB>
std::vector<EigenPair<typename DerivedA::Scalar>> gen_eig_hermitian(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
    Eigen::Index k) {
  using Scalar = typename DerivedA::Scalar;
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != n) {
    throw std::invalid_argument("gen_eig_hermitian: dimension mismatch");
  }
  if (k < 0 || k > n) throw std::invalid_argument("gen_eig_hermitian: k out of range");
  detail::require_finite(a, "gen_eig_hermitian");
  detail::require_finite(b, "gen_eig_hermitian");
  std::vector<EigenPair<Scalar>> out;
  if (k == 0) return out;

  const auto llt = detail::definite_cholesky(b, "gen_eig_hermitian");
  const auto lower = llt.matrixL();
  // c = L^-1 a L^-H
  Matrix<Scalar> c = lower.solve(detail::hermitian_part(a));
  c = lower.solve(Matrix<Scalar>(c.adjoint()));
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(detail::hermitian_part(c));
  if (es.info() != Eigen::Success) {
    throw NumericalError("gen_eig_hermitian: eigensolver did not converge");
  }
  const Matrix<Scalar> vectors = llt.matrixU().solve(es.eigenvectors());
  out.reserve(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::Index col = n - 1 - i;  // ascending from the solver
    out.push_back({static_cast<double>(es.eigenvalues()(col)), vectors.col(col)});
  }
  return out;
}

/// log2 det(I + (sigma2 I + w)^-1 h q h^H) in bits.
template <typename DerivedH, typename DerivedQ, typename DerivedW>
double rate_logdet(const Eigen::MatrixBase<DerivedH>& h, const Eigen::MatrixBase<DerivedQ>& q,
                   const Eigen::MatrixBase<DerivedW>& w, double sigma2) {
  using Scalar = typename DerivedH::Scalar;
  const Eigen::Index rx = h.rows();
  if (q.rows() != h.cols() || q.cols() != h.cols() || w.rows() != rx || w.cols() != rx) {
    throw std::invalid_argument("rate_logdet: dimension mismatch");
  }
  if (!(sigma2 > 0.0)) throw std::invalid_argument("rate_logdet: sigma2 must be positive");
  if (rx == 0 || h.cols() == 0) return 0.0;

  Matrix<Scalar> noise = detail::hermitian_part(w);
  noise.diagonal().array() += Scalar(sigma2);
  const auto llt = detail::definite_cholesky(noise, "rate_logdet");
  // whitened signal covariance L^-1 h q h^H L^-H
  const Matrix<Scalar> g = llt.matrixL().solve(Matrix<Scalar>(h));
  Matrix<Scalar> gram = g * detail::hermitian_part(q) * g.adjoint();
  gram = detail::hermitian_part(gram);
  gram.diagonal().array() += Scalar(1);
  Eigen::LLT<Matrix<Scalar>> inner(gram);
  if (inner.info() != Eigen::Success) {
    throw NumericalError("rate_logdet: signal covariance is not positive semidefinite");
  }
  const double log_det =
      2.0 * inner.matrixLLT().diagonal().real().array().log().sum() / std::log(2.0);
  return std::max(log_det, 0.0);
}

}  // namespace sdof
