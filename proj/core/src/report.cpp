// SPDX-License-Identifier: Apache-2.0
#include "mimodiag/report.hpp"

#include <iomanip>
#include <sstream>

namespace mimodiag {

using nlohmann::ordered_json;

nlohmann::ordered_json condition_report_to_json(const ConditionReport& cr) {
  ordered_json j;
  j["rate"] = cr.rate;
  j["capacity"] = cr.capacity;
  j["cap_gap"] = cr.cap_gap;
  j["diag_residual"] = cr.diag_residual;
  j["cov_residual"] = cr.cov_residual;
  j["per_stream_snr"] = std::vector<double>(
      cr.per_stream_snr.data(), cr.per_stream_snr.data() + cr.per_stream_snr.size());
  j["tolerance"] = cr.tolerance;
  j["capacity_ok"] = cr.capacity_ok;
  j["diag_ok"] = cr.diag_ok;
  j["cov_ok"] = cr.cov_ok;
  j["pass"] = cr.pass();
  return j;
}

nlohmann::ordered_json solver_trace_to_json(const SolverTrace& tr) {
  ordered_json j;
  j["iterations"] = tr.iterations;
  j["converged"] = tr.converged;
  j["final_residual"] = tr.final_residual;
  j["objective_history"] = tr.objective_history;
  return j;
}

nlohmann::ordered_json RunReport::full_json() const {
  ordered_json j = payload;
  j["wall_clock_ms"] = wall_clock_ms;
  return j;
}

namespace {

std::string rate_str(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

std::string resid_str(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

void render_condition_table(std::ostream& os, const ordered_json& cr,
                            const std::string& indent) {
  auto row = [&](const std::string& label, const std::string& value,
                 bool ok, bool show_flag) {
    os << indent << std::left << std::setw(16) << label << std::right
       << std::setw(14) << value;
    if (show_flag) os << "  [" << (ok ? "ok" : "FAIL") << "]";
    os << "\n";
  };
  row("rate (bps/Hz)", rate_str(cr["rate"].get<double>()), true, false);
  row("capacity", rate_str(cr["capacity"].get<double>()), true, false);
  row("cap_gap", resid_str(cr["cap_gap"].get<double>()),
      cr["capacity_ok"].get<bool>(), true);
  row("diag_residual", resid_str(cr["diag_residual"].get<double>()),
      cr["diag_ok"].get<bool>(), true);
  row("cov_residual", resid_str(cr["cov_residual"].get<double>()),
      cr["cov_ok"].get<bool>(), true);
}

}  // namespace

std::string RunReport::render_text() const {
  std::ostringstream os;
  const std::string cmd = payload.value("command", "");
  os << "command: " << cmd << "\n";
  if (payload.contains("scenario")) {
    os << "scenario: " << payload["scenario"].get<std::string>() << "\n";
  }

  if (payload.contains("designs")) {
    for (const auto& d : payload["designs"]) {
      os << "\ndesign: " << d["method"].get<std::string>()
         << "  (streams: " << d["streams"].get<int>() << ")\n";
      render_condition_table(os, d["report"], "  ");
      if (d.contains("mmse_sic_rate")) {
        os << "  " << std::left << std::setw(16) << "mmse_sic_rate"
           << std::right << std::setw(14)
           << rate_str(d["mmse_sic_rate"].get<double>()) << "\n";
      }
      os << "  verdict: " << (d["verdict"].get<bool>() ? "pass" : "fail")
         << "\n";
    }
  }
  if (payload.contains("users")) {
    for (const auto& u : payload["users"]) {
      os << "\nuser " << u["user"].get<int>() << ":\n";
      render_condition_table(os, u["report"], "  ");
      os << "  verdict: " << (u["verdict"].get<bool>() ? "pass" : "fail")
         << "\n";
    }
    if (payload.contains("sum_rate")) {
      os << "\nsum rate: " << rate_str(payload["sum_rate"].get<double>())
         << " bps/Hz\n";
    }
  }
  if (payload.contains("wmmse")) {
    const auto& tr = payload["wmmse"];
    os << "wmmse: " << tr["iterations"].get<int>() << " iterations, "
       << (tr["converged"].get<bool>() ? "converged" : "NOT converged")
       << "\n";
  }
  if (payload.contains("optimizer")) {
    const auto& opt = payload["optimizer"];
    os << "\noptimizer:\n"
       << "  capacity:      " << rate_str(opt["capacity"].get<double>())
       << " bps/Hz\n"
       << "  power used:    " << rate_str(opt["power_used"].get<double>())
       << "\n"
       << "  it slack:      " << resid_str(opt["it_slack"].get<double>())
       << "\n";
  }
  if (payload.contains("report") && cmd == "cr") {
    os << "\ndesign on optimized covariance:\n";
    render_condition_table(os, payload["report"], "  ");
  }
  if (payload.contains("worst")) {
    const auto& w = payload["worst"];
    os << "instances: " << payload["ensemble"].get<int>() << "\n"
       << "worst cap_gap:        " << resid_str(w["cap_gap"].get<double>())
       << "\n"
       << "worst diag_residual:  "
       << resid_str(w["diag_residual"].get<double>()) << "\n"
       << "worst cov_residual:   "
       << resid_str(w["cov_residual"].get<double>()) << "\n"
       << "failures: " << payload["failures"].get<int>() << "\n";
  }
  os << "\nverdict: " << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace mimodiag
