// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace mimodiag {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Thrown when an operation needs at least one strictly positive
/// singular value and the input has none (all-zero matrix, zero
/// covariance, zero effective channel).
struct RankZeroError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Thrown when a matrix inversion required by a design does not exist
/// (e.g. the ZF pseudo-inverse of a rank-deficient effective channel).
struct SingularMatrixError : std::domain_error {
  using std::domain_error::domain_error;
};

inline constexpr double kDefaultRankTol = 1e-12;

/// Truncated SVD: A = left * diag(singular_values) * right^H with only
/// the singular values above tol * sigma_max retained.
struct SvdResult {
  Matrix left;                  // N x D, orthonormal columns
  RealVector singular_values;   // length D, descending, all > 0
  Matrix right;                 // M x D, orthonormal columns
  double tolerance_used = kDefaultRankTol;

  Eigen::Index rank() const { return singular_values.size(); }
};

/// Hermitian eigendecomposition A = vectors * diag(values) * vectors^H.
struct EvdResult {
  Matrix vectors;      // M x M unitary
  RealVector values;   // descending, real
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending,
/// each eigenvector phase-normalized so its largest-modulus entry is
/// real and positive.
EvdResult herm_evd(const Matrix& a);

/// SVD keeping exactly the singular values > tol * sigma_max.
/// Left singular vectors are phase-normalized; the matching phase is
/// absorbed into the right factor so the product is unchanged.
/// Throws RankZeroError for an all-zero input.
SvdResult truncated_svd(const Matrix& a, double tol = kDefaultRankTol);

/// Factor F (M x D) of a Hermitian PSD matrix with F * F^H = S,
/// built from the D strictly positive eigenvalues as U * diag(sqrt(lambda)).
/// Throws std::domain_error for indefinite input, RankZeroError for S = 0.
Matrix psd_sqrt(const Matrix& s, double tol = kDefaultRankTol);

/// Hermitian inverse square root W of a positive definite matrix,
/// W * S * W^H = I. Throws std::domain_error when S is singular or indefinite.
Matrix inv_sqrt(const Matrix& s);

/// Number of singular values above tol * sigma_max; 0 for the zero matrix.
Eigen::Index numeric_rank(const Matrix& a, double tol = kDefaultRankTol);

}  // namespace mimodiag
