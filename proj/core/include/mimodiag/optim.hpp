// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mimodiag/channel.hpp"

namespace mimodiag {

/// Two-user interference channel: h[j][k] is the channel from
/// transmitter k to receiver j. Noise covariances default to identity.
struct IcScenario {
  std::array<std::array<Matrix, 2>, 2> h;
  double power_budget = 0.0;  // per user, linear scale
  std::array<Matrix, 2> noise_cov;

  IcScenario(std::array<std::array<Matrix, 2>, 2> channels, double power);
  IcScenario(std::array<std::array<Matrix, 2>, 2> channels, double power,
             std::array<Matrix, 2> noise);
};

/// Cognitive-radio scenario: secondary link h_secondary, cross channel
/// g_cross into the primary receiver, and the interference power cap.
struct CrScenario {
  Matrix h_secondary;
  Matrix g_cross;
  double power_budget = 0.0;
  double it_limit = 0.0;
};

struct SolverTrace {
  int iterations = 0;
  std::vector<double> objective_history;
  bool converged = false;
  double final_residual = 0.0;
};

struct WmmseResult {
  std::array<Matrix, 2> precoders;
  SolverTrace trace;
};

/// Water-filling power allocation: p_d = max(0, mu - 1/g_d) with the
/// water level mu set so the powers sum to total_power.
RealVector waterfill(const RealVector& channel_power_gains, double total_power);

/// Block-coordinate sum-rate maximization for the two-user IC via the
/// weighted-MMSE reformulation, interference treated as noise. The
/// objective history is the sum rate after each full update sweep and
/// is non-decreasing.
WmmseResult wmmse_ic(const IcScenario& sc, int max_iters = 500,
                     double conv_tol = 1e-8, std::uint64_t seed = 0);

/// Capacity of user k's link with the interference from the other
/// user's precoder absorbed into the noise and whitened away.
double ic_user_capacity(const IcScenario& sc, int k, const Matrix& v_self,
                        const Matrix& v_other);

/// Interference-plus-noise covariance at receiver k given the other
/// transmitter's precoder.
Matrix ic_interference_cov(const IcScenario& sc, int k, const Matrix& v_other);

/// Covariance maximizing log2 det(I + H S H^H) subject to trace(S) <=
/// power_budget, trace(G S G^H) <= it_limit, S PSD. Solved by dual
/// bisection over the two trace constraints with a closed-form
/// water-filling inner solution.
TransmitCovariance cr_capacity_opt(const CrScenario& sc, double tol = 1e-7);

}  // namespace mimodiag
