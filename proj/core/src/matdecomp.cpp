// SPDX-License-Identifier: Apache-2.0
#include "mimodiag/matdecomp.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace mimodiag {

namespace {

// Phase factor that makes the largest-modulus entry of v real-positive.
Complex canonical_phase(const Eigen::Ref<const Eigen::VectorXcd>& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex pivot = v(imax);
  const double mag = std::abs(pivot);
  if (mag == 0.0) return Complex(1.0, 0.0);
  return std::conj(pivot) / mag;
}

}  // namespace

EvdResult herm_evd(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::domain_error("herm_evd: input must be square");
  }
  const double scale = a.norm();
  if ((a - a.adjoint()).norm() > 1e-9 * std::max(scale, 1e-300)) {
    throw std::domain_error("herm_evd: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("herm_evd: eigensolver failed to converge");
  }
  const Eigen::Index m = a.rows();
  EvdResult out;
  out.values.resize(m);
  out.vectors.resize(m, m);
  // Eigen returns ascending order; flip to descending.
  for (Eigen::Index i = 0; i < m; ++i) {
    out.values(i) = es.eigenvalues()(m - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(m - 1 - i);
    out.vectors.col(i) *= canonical_phase(out.vectors.col(i));
  }
  return out;
}

SvdResult truncated_svd(const Matrix& a, double tol) {
  if (tol <= 0.0 || tol >= 1.0) {
    throw std::domain_error("truncated_svd: tol must lie in (0, 1)");
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  if (smax == 0.0) {
    throw RankZeroError("truncated_svd: all-zero matrix has no positive singular values");
  }
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > tol * smax) ++rank;

  SvdResult out;
  out.tolerance_used = tol;
  out.singular_values = sigma.head(rank);
  out.left = svd.matrixU().leftCols(rank);
  out.right = svd.matrixV().leftCols(rank);
  // One free phase per singular pair: normalize the left column and
  // rotate the right column by the same factor to keep the product.
  for (Eigen::Index k = 0; k < rank; ++k) {
    const Complex phase = canonical_phase(out.left.col(k));
    out.left.col(k) *= phase;
    out.right.col(k) *= phase;
  }
  return out;
}

Matrix psd_sqrt(const Matrix& s, double tol) {
  EvdResult evd = herm_evd(s);
  const double top = evd.values.size() > 0 ? std::abs(evd.values(0)) : 0.0;
  const double scale = s.norm();
  if (evd.values.size() > 0 && evd.values.minCoeff() < -1e-9 * std::max(scale, 1e-300)) {
    throw std::domain_error("psd_sqrt: input is indefinite (negative eigenvalue)");
  }
  Eigen::Index rank = 0;
  while (rank < evd.values.size() && evd.values(rank) > tol * top) ++rank;
  if (rank == 0) {
    throw RankZeroError("psd_sqrt: zero matrix has no positive eigenvalues");
  }
  return evd.vectors.leftCols(rank) *
         evd.values.head(rank).cwiseSqrt().asDiagonal();
}

Matrix inv_sqrt(const Matrix& s) {
  EvdResult evd = herm_evd(s);
  const double scale = s.norm();
  if (evd.values.size() == 0 ||
      evd.values.minCoeff() <= 1e-12 * std::max(scale, 1e-300)) {
    throw std::domain_error("inv_sqrt: input is singular or not positive definite");
  }
  return evd.vectors *
         evd.values.cwiseSqrt().cwiseInverse().asDiagonal() *
         evd.vectors.adjoint();
}

Eigen::Index numeric_rank(const Matrix& a, double tol) {
  if (tol <= 0.0 || tol >= 1.0) {
    throw std::domain_error("numeric_rank: tol must lie in (0, 1)");
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  const RealVector& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  if (smax == 0.0) return 0;
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > tol * smax) ++rank;
  return rank;
}

}  // namespace mimodiag
