// SPDX-License-Identifier: Apache-2.0
#include "mimodiag/transceiver.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace mimodiag {

LinearTransceiver capacity_achieving_design(const Matrix& h,
                                            const TransmitCovariance& s_x) {
  if (h.cols() != s_x.dim()) {
    throw std::domain_error("capacity_achieving_design: dimension mismatch");
  }
  if (s_x.rank() == 0 || (h * s_x.factor()).norm() == 0.0) {
    throw RankZeroError(
        "capacity_achieving_design: effective product H * S_x^{1/2} is zero");
  }
  TransmitCovariance working = s_x;
  SvdResult phi = truncated_svd(h * working.factor());
  if (phi.rank() < working.rank()) {
    // Power in the channel null space carries no rate; replace the
    // covariance by its capacity-preserving reduced-rank version first.
    working = rank_reduce(h, s_x);
    phi = truncated_svd(h * working.factor());
  }
  LinearTransceiver t;
  t.precoder = working.factor() * phi.right;
  t.decoder = phi.left;
  t.stream_gains = phi.singular_values;
  return t;
}

TransmitCovariance effective_covariance(const Matrix& h,
                                        const TransmitCovariance& s_x) {
  if (s_x.rank() == 0) return s_x;
  const Eigen::Index product_rank = numeric_rank(h * s_x.factor());
  if (product_rank == 0 || product_rank == s_x.rank()) return s_x;
  return rank_reduce(h, s_x);
}

LinearTransceiver svd_design(const Matrix& h, const RealVector& power_alloc) {
  const SvdResult ch = truncated_svd(h);
  if (power_alloc.size() != ch.rank()) {
    throw std::domain_error(
        "svd_design: power allocation length must equal rank(H)");
  }
  if (power_alloc.minCoeff() < 0.0) {
    throw std::domain_error("svd_design: negative power allocation entry");
  }
  LinearTransceiver t;
  t.precoder = ch.right * power_alloc.cwiseSqrt().asDiagonal();
  t.decoder = ch.left;
  t.stream_gains =
      ch.singular_values.cwiseProduct(power_alloc.cwiseSqrt());
  return t;
}

LinearTransceiver evd_zf_design(const Matrix& h, const TransmitCovariance& s_x) {
  if (h.cols() != s_x.dim()) {
    throw std::domain_error("evd_zf_design: dimension mismatch");
  }
  if (s_x.rank() == 0) {
    throw RankZeroError("evd_zf_design: zero covariance");
  }
  const Matrix& v = s_x.factor();
  const Matrix hv = h * v;
  if (numeric_rank(hv) < hv.cols()) {
    throw SingularMatrixError(
        "evd_zf_design: H*V is column-rank deficient, ZF pseudo-inverse "
        "does not exist");
  }
  const Matrix gram = hv.adjoint() * hv;
  // U^H = gram^{-1} (HV)^H, so U = HV gram^{-1} (gram is Hermitian).
  const Matrix u = hv * gram.inverse();
  LinearTransceiver t;
  t.precoder = v;
  t.decoder = u;
  t.stream_gains = RealVector::Ones(v.cols());  // U^H H V = I
  return t;
}

RealVector stream_snrs(const Matrix& h, const LinearTransceiver& t) {
  const Eigen::Index d = t.precoder.cols();
  if (t.decoder.cols() != d || h.rows() != t.decoder.rows() ||
      h.cols() != t.precoder.rows()) {
    throw std::domain_error("stream_snrs: dimension mismatch");
  }
  RealVector snr(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double unorm2 = t.decoder.col(i).squaredNorm();
    if (unorm2 == 0.0) {
      throw std::domain_error("stream_snrs: decoder column is zero");
    }
    const Complex g = t.decoder.col(i).dot(h * t.precoder.col(i));
    snr(i) = std::norm(g) / unorm2;
  }
  return snr;
}

double achievable_rate(const Matrix& h, const LinearTransceiver& t) {
  const RealVector snr = stream_snrs(h, t);
  double rate = 0.0;
  for (Eigen::Index i = 0; i < snr.size(); ++i) rate += std::log2(1.0 + snr(i));
  return rate;
}

ConditionReport check_conditions(const Matrix& h, const TransmitCovariance& s_x,
                                 const LinearTransceiver& t, double tol) {
  if (tol <= 0.0) throw std::domain_error("check_conditions: tol must be > 0");
  ConditionReport r;
  r.tolerance = tol;
  r.per_stream_snr = stream_snrs(h, t);
  r.rate = 0.0;
  for (Eigen::Index i = 0; i < r.per_stream_snr.size(); ++i) {
    r.rate += std::log2(1.0 + r.per_stream_snr(i));
  }
  r.capacity = capacity(h, s_x);
  r.cap_gap = std::abs(r.rate - r.capacity);

  const Matrix eff = t.decoder.adjoint() * h * t.precoder;
  double off = 0.0;
  for (Eigen::Index i = 0; i < eff.rows(); ++i) {
    for (Eigen::Index j = 0; j < eff.cols(); ++j) {
      if (i != j) off = std::max(off, std::abs(eff(i, j)));
    }
  }
  r.diag_residual = off;

  const Matrix gram = t.precoder * t.precoder.adjoint();
  r.cov_residual =
      (gram - s_x.matrix()).norm() / std::max(1.0, s_x.matrix().norm());

  r.capacity_ok = r.cap_gap <= tol;
  r.diag_ok = r.diag_residual <= tol;
  r.cov_ok = r.cov_residual <= tol;
  return r;
}

double mmse_sic_rate(const Matrix& h, const Matrix& v) {
  std::vector<int> order(static_cast<std::size_t>(v.cols()));
  std::iota(order.begin(), order.end(), 0);
  return mmse_sic_rate(h, v, order);
}

double mmse_sic_rate(const Matrix& h, const Matrix& v,
                     const std::vector<int>& order) {
  if (h.cols() != v.rows()) {
    throw std::domain_error("mmse_sic_rate: dimension mismatch");
  }
  const Matrix hv = h * v;
  if (hv.norm() == 0.0) {
    throw std::domain_error("mmse_sic_rate: effective channel H*V is zero");
  }
  if (static_cast<Eigen::Index>(order.size()) != hv.cols()) {
    throw std::domain_error("mmse_sic_rate: decoding order length mismatch");
  }
  const Eigen::Index n = hv.rows();
  double rate = 0.0;
  // Stream at position i sees the not-yet-cancelled streams (positions
  // after i) as Gaussian interference.
  for (std::size_t i = 0; i < order.size(); ++i) {
    Matrix cov = Matrix::Identity(n, n);
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const auto hj = hv.col(order[j]);
      cov.noalias() += hj * hj.adjoint();
    }
    const auto hd = hv.col(order[i]);
    const Complex sinr = hd.dot(cov.ldlt().solve(hd));
    rate += std::log2(1.0 + sinr.real());
  }
  return rate;
}

}  // namespace mimodiag
