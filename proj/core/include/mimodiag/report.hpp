// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "json.hpp"

#include "mimodiag/optim.hpp"
#include "mimodiag/transceiver.hpp"

namespace mimodiag {

/// Result of one CLI command. `payload` is the deterministic part:
/// identical inputs and seed produce a byte-identical dump. Wall-clock
/// time is kept outside it.
struct RunReport {
  nlohmann::ordered_json payload;
  bool pass = false;
  double wall_clock_ms = 0.0;

  nlohmann::ordered_json full_json() const;
  std::string render_text() const;
};

nlohmann::ordered_json condition_report_to_json(const ConditionReport& cr);
nlohmann::ordered_json solver_trace_to_json(const SolverTrace& tr);

}  // namespace mimodiag
