// SPDX-License-Identifier: Apache-2.0
//
// mimo-diag: construct and verify channel-diagonalizing linear
// precoder/decoder designs, and run the multi-user covariance
// optimizers, from JSON scenario files.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "mimodiag/commands.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInputError = 2;

void emit(const mimodiag::RunReport& report, const std::string& output,
          bool quiet) {
  if (quiet) return;
  if (output == "json") {
    std::cout << report.full_json().dump(2) << "\n";
  } else {
    std::cout << report.render_text();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity-achieving MIMO channel diagonalization toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --output/--quiet after the subcommand too

  std::string output = "text";
  bool quiet = false;
  app.add_option("--output", output, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--quiet", quiet, "Suppress report output");

  std::string design_scenario, design_method = "theorem1";
  double design_tol = 1e-8;
  auto* design = app.add_subcommand(
      "design", "Run a precoder/decoder design on a point-to-point scenario");
  design->add_option("--method", design_method, "Design method")
      ->check(CLI::IsMember({"theorem1", "svd_waterfill", "evd_zf"}))
      ->capture_default_str();
  design->add_option("--tol", design_tol, "Condition tolerance")
      ->capture_default_str();
  design->add_option("scenario", design_scenario, "Scenario file")->required();

  std::string ic_scenario;
  std::uint64_t ic_seed = 0;
  int ic_max_iters = 500;
  auto* ic = app.add_subcommand(
      "ic", "Two-user interference channel pipeline (WMMSE + design)");
  ic->add_option("--seed", ic_seed, "WMMSE initialization seed")
      ->capture_default_str();
  ic->add_option("--max-iters", ic_max_iters, "WMMSE iteration cap")
      ->capture_default_str();
  ic->add_option("scenario", ic_scenario, "Scenario file")->required();

  std::string cr_scenario;
  double cr_tol = 1e-7;
  auto* cr = app.add_subcommand(
      "cr", "Cognitive-radio pipeline (capacity optimization + design)");
  cr->add_option("--tol", cr_tol, "Solver tolerance")->capture_default_str();
  cr->add_option("scenario", cr_scenario, "Scenario file")->required();

  int verify_n = 1000, verify_max_dim = 8;
  std::uint64_t verify_seed = 42;
  auto* verify = app.add_subcommand(
      "verify", "Random-ensemble sweep of the diagonalizing design");
  verify->add_option("--n", verify_n, "Ensemble size")->capture_default_str();
  verify->add_option("--max-dim", verify_max_dim, "Maximum matrix dimension")
      ->capture_default_str();
  verify->add_option("--seed", verify_seed, "Ensemble seed")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    mimodiag::RunReport report;
    if (design->parsed()) {
      report = mimodiag::cmd_design(
          mimodiag::parse_scenario(design_scenario),
          mimodiag::design_method_from_string(design_method), design_tol);
    } else if (ic->parsed()) {
      report = mimodiag::cmd_ic(mimodiag::parse_scenario(ic_scenario), ic_seed,
                                ic_max_iters);
    } else if (cr->parsed()) {
      report = mimodiag::cmd_cr(mimodiag::parse_scenario(cr_scenario), cr_tol);
    } else {
      report = mimodiag::cmd_verify(verify_n, verify_max_dim, verify_seed);
    }
    emit(report, output, quiet);
    return report.pass ? kExitPass : kExitFail;
  } catch (const mimodiag::ScenarioError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
