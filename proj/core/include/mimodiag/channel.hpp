// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mimodiag/matdecomp.hpp"

namespace mimodiag {

/// Physical channel plus receiver noise covariance. whiten() maps this
/// to the effective channel seen through unit-covariance noise.
struct MimoChannel {
  Matrix h_raw;      // N x M
  Matrix noise_cov;  // N x N Hermitian PD

  MimoChannel(Matrix h, Matrix s_z);
};

/// Hermitian PSD transmit covariance with its cached low-rank factor.
/// factor() has exactly rank() columns and factor() * factor()^H
/// reproduces matrix().
class TransmitCovariance {
 public:
  explicit TransmitCovariance(const Matrix& s, double tol = kDefaultRankTol);

  const Matrix& matrix() const { return matrix_; }
  const Matrix& factor() const { return factor_; }
  Eigen::Index rank() const { return factor_.cols(); }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  Matrix matrix_;
  Matrix factor_;
};

/// Effective channel H = S_z^{-1/2} * H_raw.
Matrix whiten(const MimoChannel& ch);

/// log2 det(I + H S_x H^H) in bps/Hz, evaluated through the singular
/// values of H * S_x^{1/2} as sum log2(1 + phi_d^2).
double capacity(const Matrix& h, const TransmitCovariance& s_x);

/// Capacity-preserving covariance whose rank matches the rank of the
/// effective product H * S_x^{1/2}: the factor is projected onto the
/// row space of that product. Throws RankZeroError when the product is zero.
TransmitCovariance rank_reduce(const Matrix& h, const TransmitCovariance& s_x);

}  // namespace mimodiag
