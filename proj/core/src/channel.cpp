// SPDX-License-Identifier: Apache-2.0
#include "mimodiag/channel.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace mimodiag {

MimoChannel::MimoChannel(Matrix h, Matrix s_z)
    : h_raw(std::move(h)), noise_cov(std::move(s_z)) {
  if (h_raw.norm() == 0.0) {
    throw std::domain_error("MimoChannel: channel matrix is identically zero");
  }
  if (noise_cov.rows() != h_raw.rows() || noise_cov.cols() != h_raw.rows()) {
    throw std::domain_error("MimoChannel: noise covariance dimension mismatch");
  }
}

TransmitCovariance::TransmitCovariance(const Matrix& s, double tol)
    : matrix_(s) {
  if (s.rows() != s.cols()) {
    throw std::domain_error("TransmitCovariance: matrix must be square");
  }
  // Rank zero (S = 0) is a valid covariance with an empty factor.
  if (s.norm() == 0.0) {
    factor_ = Matrix::Zero(s.rows(), 0);
  } else {
    factor_ = psd_sqrt(s, tol);
  }
}

Matrix whiten(const MimoChannel& ch) {
  return inv_sqrt(ch.noise_cov) * ch.h_raw;
}

double capacity(const Matrix& h, const TransmitCovariance& s_x) {
  if (h.cols() != s_x.dim()) {
    throw std::domain_error("capacity: channel/covariance dimension mismatch");
  }
  if (s_x.rank() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(h * s_x.factor());
  double rate = 0.0;
  for (Eigen::Index d = 0; d < svd.singularValues().size(); ++d) {
    const double phi = svd.singularValues()(d);
    rate += std::log2(1.0 + phi * phi);
  }
  return rate;
}

TransmitCovariance rank_reduce(const Matrix& h, const TransmitCovariance& s_x) {
  if (h.cols() != s_x.dim()) {
    throw std::domain_error("rank_reduce: channel/covariance dimension mismatch");
  }
  if (s_x.rank() == 0 || (h * s_x.factor()).norm() == 0.0) {
    throw RankZeroError("rank_reduce: effective product H * S_x^{1/2} is zero");
  }
  const SvdResult phi = truncated_svd(h * s_x.factor());
  const Matrix projected = s_x.factor() * phi.right;
  return TransmitCovariance(projected * projected.adjoint());
}

}  // namespace mimodiag
