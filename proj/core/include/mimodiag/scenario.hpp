// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>

// vendored single-header nlohmann/json
#include "json.hpp"

#include "mimodiag/matdecomp.hpp"

namespace mimodiag {

enum class ScenarioKind { point_to_point, interference_channel, cognitive_radio };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& s);

/// Thrown for malformed scenario files; the message names the offending
/// entry.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed scenario file. Matrix entries are row-major nested arrays in
/// the file, each entry either a plain real or a [re, im] pair.
struct ScenarioFile {
  ScenarioKind kind = ScenarioKind::point_to_point;
  std::map<std::string, Matrix> matrices;
  std::map<std::string, double> scalars;
  std::map<std::string, Matrix> fixed_precoders;  // IC only, optional
  std::string metadata;

  const Matrix& matrix(const std::string& name) const;
  double scalar(const std::string& name) const;
};

ScenarioFile parse_scenario(const std::filesystem::path& path);
ScenarioFile parse_scenario_json(const nlohmann::json& j);

nlohmann::ordered_json scenario_to_json(const ScenarioFile& sc);
nlohmann::ordered_json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& name);

/// Stable hex digest of the canonical JSON form, used to tag reports.
std::string scenario_digest(const ScenarioFile& sc);

}  // namespace mimodiag
