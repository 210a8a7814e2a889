// SPDX-License-Identifier: Apache-2.0
#include "mimodiag/commands.hpp"

#include <chrono>
#include <random>

namespace mimodiag {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::string method_name(DesignMethod m) {
  switch (m) {
    case DesignMethod::theorem1: return "theorem1";
    case DesignMethod::svd_waterfill: return "svd_waterfill";
    case DesignMethod::evd_zf: return "evd_zf";
  }
  return "unknown";
}

Matrix effective_channel(const ScenarioFile& sc) {
  const Matrix& h = sc.matrix("H");
  if (auto it = sc.matrices.find("S_z"); it != sc.matrices.end()) {
    return whiten(MimoChannel(h, it->second));
  }
  return h;
}

Matrix random_complex(std::mt19937_64& rng, Eigen::Index rows,
                      Eigen::Index cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = Complex(gauss(rng), gauss(rng));
    }
  }
  return m;
}

}  // namespace

DesignMethod design_method_from_string(const std::string& s) {
  if (s == "theorem1") return DesignMethod::theorem1;
  if (s == "svd_waterfill") return DesignMethod::svd_waterfill;
  if (s == "evd_zf") return DesignMethod::evd_zf;
  throw ScenarioError("unknown design method '" + s + "'");
}

RunReport cmd_design(const ScenarioFile& sc, DesignMethod method, double tol) {
  const auto start = Clock::now();
  if (sc.kind != ScenarioKind::point_to_point) {
    throw ScenarioError("design command requires a point_to_point scenario");
  }
  const Matrix h = effective_channel(sc);
  const TransmitCovariance s_x(sc.matrix("S_x"));

  LinearTransceiver t;
  TransmitCovariance checked = s_x;
  switch (method) {
    case DesignMethod::theorem1:
      t = capacity_achieving_design(h, s_x);
      checked = effective_covariance(h, s_x);
      break;
    case DesignMethod::svd_waterfill: {
      // Water-fill the channel eigenmodes at the same total power; the
      // implied covariance V V^H is what the conditions are checked against.
      const SvdResult ch = truncated_svd(h);
      const RealVector gains =
          ch.singular_values.cwiseProduct(ch.singular_values);
      const RealVector p = waterfill(gains, s_x.matrix().trace().real());
      t = svd_design(h, p);
      checked = TransmitCovariance(t.precoder * t.precoder.adjoint());
      break;
    }
    case DesignMethod::evd_zf:
      t = evd_zf_design(h, s_x);
      break;
  }
  const ConditionReport rep = check_conditions(h, checked, t, tol);
  const double sic = mmse_sic_rate(h, t.precoder);

  RunReport out;
  out.payload["command"] = "design";
  out.payload["scenario"] = scenario_digest(sc);
  ordered_json d;
  d["method"] = method_name(method);
  d["streams"] = static_cast<int>(t.precoder.cols());
  d["report"] = condition_report_to_json(rep);
  d["mmse_sic_rate"] = sic;
  d["precoder"] = matrix_to_json(t.precoder);
  d["decoder"] = matrix_to_json(t.decoder);
  d["verdict"] = rep.pass();
  out.payload["designs"] = ordered_json::array({std::move(d)});
  out.pass = rep.pass();
  out.payload["pass"] = out.pass;
  out.wall_clock_ms = elapsed_ms(start);
  return out;
}

RunReport cmd_ic(const ScenarioFile& sc, std::uint64_t seed, int max_iters) {
  const auto start = Clock::now();
  if (sc.kind != ScenarioKind::interference_channel) {
    throw ScenarioError("ic command requires an interference_channel scenario");
  }
  IcScenario ic({{{sc.matrix("H11"), sc.matrix("H12")},
                  {sc.matrix("H21"), sc.matrix("H22")}}},
                sc.scalar("power_budget"));

  RunReport out;
  out.payload["command"] = "ic";
  out.payload["scenario"] = scenario_digest(sc);
  out.payload["seed"] = seed;

  std::array<Matrix, 2> v;
  const bool fixed = !sc.fixed_precoders.empty();
  out.payload["fixed_precoders"] = fixed;
  bool solver_ok = true;
  if (fixed) {
    v[0] = sc.fixed_precoders.at("V1");
    v[1] = sc.fixed_precoders.at("V2");
  } else {
    WmmseResult res = wmmse_ic(ic, max_iters, 1e-8, seed);
    v = res.precoders;
    out.payload["wmmse"] = solver_trace_to_json(res.trace);
    solver_ok = res.trace.converged;  // reported, non-fatal
  }

  bool all_pass = true;
  double sum_rate = 0.0;
  ordered_json users = ordered_json::array();
  for (int k = 0; k < 2; ++k) {
    const Matrix s_z = ic_interference_cov(ic, k, v[1 - k]);
    const Matrix h_eff = inv_sqrt(s_z) * ic.h[k][k];
    const TransmitCovariance cov(
        0.5 * (v[k] * v[k].adjoint() +
               (v[k] * v[k].adjoint()).adjoint()));
    const LinearTransceiver t = capacity_achieving_design(h_eff, cov);
    const ConditionReport rep = check_conditions(h_eff, cov, t);
    all_pass = all_pass && rep.pass();
    sum_rate += rep.rate;
    ordered_json u;
    u["user"] = k + 1;
    u["capacity"] = rep.capacity;
    u["precoder"] = matrix_to_json(t.precoder);
    u["decoder"] = matrix_to_json(t.decoder);
    u["report"] = condition_report_to_json(rep);
    u["verdict"] = rep.pass();
    users.push_back(std::move(u));
  }
  out.payload["users"] = std::move(users);
  out.payload["sum_rate"] = sum_rate;
  out.payload["wmmse_converged"] = solver_ok;
  out.pass = all_pass;
  out.payload["pass"] = out.pass;
  out.wall_clock_ms = elapsed_ms(start);
  return out;
}

RunReport cmd_cr(const ScenarioFile& sc, double tol) {
  const auto start = Clock::now();
  if (sc.kind != ScenarioKind::cognitive_radio) {
    throw ScenarioError("cr command requires a cognitive_radio scenario");
  }
  CrScenario cr{sc.matrix("H"), sc.matrix("G"), sc.scalar("power_budget"),
                sc.scalar("it_limit")};
  const TransmitCovariance s_opt = cr_capacity_opt(cr, tol);
  const Matrix& h = cr.h_secondary;
  const LinearTransceiver t = capacity_achieving_design(h, s_opt);
  const ConditionReport rep = check_conditions(h, s_opt, t);

  const double power_used = s_opt.matrix().trace().real();
  const double it_used =
      (cr.g_cross * s_opt.matrix() * cr.g_cross.adjoint()).trace().real();

  RunReport out;
  out.payload["command"] = "cr";
  out.payload["scenario"] = scenario_digest(sc);
  ordered_json opt;
  opt["s_x_opt"] = matrix_to_json(s_opt.matrix());
  opt["capacity"] = rep.capacity;
  opt["power_used"] = power_used;
  opt["power_slack"] = cr.power_budget - power_used;
  opt["it_used"] = it_used;
  opt["it_slack"] = cr.it_limit - it_used;
  out.payload["optimizer"] = std::move(opt);
  out.payload["report"] = condition_report_to_json(rep);
  const bool feasible = power_used <= cr.power_budget + 1e-8 &&
                        it_used <= cr.it_limit + 1e-8;
  out.pass = rep.pass() && feasible;
  out.payload["pass"] = out.pass;
  out.wall_clock_ms = elapsed_ms(start);
  return out;
}

RunReport cmd_verify(int ensemble_size, int max_dim, std::uint64_t seed,
                     double tol) {
  const auto start = Clock::now();
  if (ensemble_size < 1) {
    throw ScenarioError("verify: ensemble size must be >= 1");
  }
  if (max_dim < 1) throw ScenarioError("verify: max_dim must be >= 1");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, max_dim);
  std::uniform_int_distribution<int> coin(0, 2);

  double worst_gap = 0.0, worst_diag = 0.0, worst_cov = 0.0;
  int failures = 0;
  for (int i = 0; i < ensemble_size; ++i) {
    const Eigen::Index m = dim(rng);
    const Eigen::Index n = dim(rng);
    // A third of the channels and covariances are deliberately
    // rank-deficient to exercise the rank-reduction path.
    Matrix h;
    if (coin(rng) == 0 && std::min(m, n) > 1) {
      std::uniform_int_distribution<int> rd(
          1, static_cast<int>(std::min(m, n)) - 1);
      const Eigen::Index r = rd(rng);
      h = random_complex(rng, n, r) * random_complex(rng, r, m);
    } else {
      h = random_complex(rng, n, m);
    }
    std::uniform_int_distribution<int> rs(1, static_cast<int>(m));
    const Matrix f = random_complex(rng, m, rs(rng));
    const TransmitCovariance s_x(0.5 *
                                 (f * f.adjoint() + (f * f.adjoint()).adjoint()));
    const LinearTransceiver t = capacity_achieving_design(h, s_x);
    const ConditionReport rep =
        check_conditions(h, effective_covariance(h, s_x), t, tol);
    worst_gap = std::max(worst_gap, rep.cap_gap);
    worst_diag = std::max(worst_diag, rep.diag_residual);
    worst_cov = std::max(worst_cov, rep.cov_residual);
    if (!rep.pass()) ++failures;
  }

  RunReport out;
  out.payload["command"] = "verify";
  out.payload["ensemble"] = ensemble_size;
  out.payload["max_dim"] = max_dim;
  out.payload["seed"] = seed;
  out.payload["tolerance"] = tol;
  ordered_json worst;
  worst["cap_gap"] = worst_gap;
  worst["diag_residual"] = worst_diag;
  worst["cov_residual"] = worst_cov;
  out.payload["worst"] = std::move(worst);
  out.payload["failures"] = failures;
  out.pass = failures == 0;
  out.payload["pass"] = out.pass;
  out.wall_clock_ms = elapsed_ms(start);
  return out;
}

}  // namespace mimodiag
