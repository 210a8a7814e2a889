// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "mimodiag/channel.hpp"

namespace mimodiag {

/// Linear precoder/decoder pair. The decoder is applied as decoder^H;
/// stream_gains holds the diagonal of decoder^H * H * precoder when the
/// design diagonalizes the channel.
struct LinearTransceiver {
  Matrix precoder;          // M x D
  Matrix decoder;           // N x D
  RealVector stream_gains;  // length D
};

/// Residuals of the three design conditions: rate equals capacity,
/// decoder^H H precoder diagonal, precoder Gram matrix equals S_x.
struct ConditionReport {
  double rate = 0.0;           // bps/Hz
  double capacity = 0.0;       // bps/Hz
  double cap_gap = 0.0;        // |rate - capacity|
  double diag_residual = 0.0;  // max off-diagonal modulus of U^H H V
  double cov_residual = 0.0;   // ||V V^H - S_x||_F / max(1, ||S_x||_F)
  RealVector per_stream_snr;
  double tolerance = 1e-8;
  bool capacity_ok = false;
  bool diag_ok = false;
  bool cov_ok = false;

  bool pass() const { return capacity_ok && diag_ok && cov_ok; }
};

/// Capacity-achieving diagonalizing design for an arbitrary PSD transmit
/// covariance: V = S_x^{1/2} V_phi and U = U_phi from the truncated SVD
/// of H * S_x^{1/2}. When rank(S_x) exceeds the rank of that product the
/// covariance is first passed through rank_reduce.
LinearTransceiver capacity_achieving_design(const Matrix& h,
                                            const TransmitCovariance& s_x);

/// Covariance actually realized by capacity_achieving_design: S_x
/// itself, or its rank-reduced version when the design drops power in
/// the channel null space. Same capacity either way.
TransmitCovariance effective_covariance(const Matrix& h,
                                        const TransmitCovariance& s_x);

/// Channel-SVD design: V = V_H P^{1/2}, U = U_H for a per-mode power
/// allocation of length rank(H).
LinearTransceiver svd_design(const Matrix& h, const RealVector& power_alloc);

/// Covariance-EVD precoder V = S_x^{1/2} with the zero-forcing decoder
/// U^H = ((HV)^H HV)^{-1} (HV)^H. Diagonalizes the channel but is
/// capacity-suboptimal in general. Throws SingularMatrixError when H*V
/// is column-rank deficient.
LinearTransceiver evd_zf_design(const Matrix& h, const TransmitCovariance& s_x);

/// Per-stream SNRs gamma_d = |u_d^H H v_d|^2 / ||u_d||^2.
RealVector stream_snrs(const Matrix& h, const LinearTransceiver& t);

/// R = sum_d log2(1 + gamma_d) in bps/Hz.
double achievable_rate(const Matrix& h, const LinearTransceiver& t);

ConditionReport check_conditions(const Matrix& h, const TransmitCovariance& s_x,
                                 const LinearTransceiver& t, double tol = 1e-8);

/// Sum rate of an MMSE receiver with successive interference
/// cancellation over the columns of H*V, decoding in the given order
/// (default 0..D-1). The total equals capacity(H, V V^H) for any order.
double mmse_sic_rate(const Matrix& h, const Matrix& v);
double mmse_sic_rate(const Matrix& h, const Matrix& v,
                     const std::vector<int>& order);

}  // namespace mimodiag
