// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "mimodiag/report.hpp"
#include "mimodiag/scenario.hpp"

namespace mimodiag {

enum class DesignMethod { theorem1, svd_waterfill, evd_zf };

DesignMethod design_method_from_string(const std::string& s);

/// Run one design on a point-to-point scenario and verify the three
/// conditions plus the MMSE-SIC reference rate.
RunReport cmd_design(const ScenarioFile& sc, DesignMethod method,
                     double tol = 1e-8);

/// Two-user IC pipeline: obtain per-user covariances (WMMSE, or fixed
/// precoders from the scenario), then run the diagonalizing design per
/// user on the whitened effective channel and verify it.
RunReport cmd_ic(const ScenarioFile& sc, std::uint64_t seed = 0,
                 int max_iters = 500);

/// Cognitive-radio pipeline: optimize the secondary covariance under
/// the interference cap, then design and verify.
RunReport cmd_cr(const ScenarioFile& sc, double tol = 1e-7);

/// Random-ensemble sweep of the capacity-achieving design, aggregating
/// worst-case residuals across instances (including rank-deficient ones).
RunReport cmd_verify(int ensemble_size, int max_dim, std::uint64_t seed,
                     double tol = 1e-8);

}  // namespace mimodiag
