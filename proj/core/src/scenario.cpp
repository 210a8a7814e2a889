// SPDX-License-Identifier: Apache-2.0
#include "mimodiag/scenario.hpp"

#include <fstream>
#include <sstream>

namespace mimodiag {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void require_hermitian_psd(const Matrix& m, const std::string& name) {
  if (m.rows() != m.cols()) {
    throw ScenarioError("matrix '" + name + "' must be square");
  }
  const double scale = std::max(m.norm(), 1e-300);
  if ((m - m.adjoint()).norm() > 1e-9 * scale) {
    throw ScenarioError("matrix '" + name + "' is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9 * scale) {
    throw ScenarioError("matrix '" + name + "' is not positive semidefinite");
  }
}

void require_hermitian_pd(const Matrix& m, const std::string& name) {
  require_hermitian_psd(m, name);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(m.norm(), 1e-300)) {
    throw ScenarioError("matrix '" + name + "' is not positive definite");
  }
}

const Matrix& require_matrix(const ScenarioFile& sc, const std::string& name) {
  auto it = sc.matrices.find(name);
  if (it == sc.matrices.end()) {
    throw ScenarioError("missing required matrix '" + name + "'");
  }
  return it->second;
}

double require_scalar(const ScenarioFile& sc, const std::string& name) {
  auto it = sc.scalars.find(name);
  if (it == sc.scalars.end()) {
    throw ScenarioError("missing required scalar '" + name + "'");
  }
  return it->second;
}

void validate(const ScenarioFile& sc) {
  switch (sc.kind) {
    case ScenarioKind::point_to_point: {
      const Matrix& h = require_matrix(sc, "H");
      const Matrix& s_x = require_matrix(sc, "S_x");
      require_hermitian_psd(s_x, "S_x");
      if (s_x.rows() != h.cols()) {
        throw ScenarioError(
            "dimension mismatch: S_x must be square of size cols(H)");
      }
      if (auto it = sc.matrices.find("S_z"); it != sc.matrices.end()) {
        require_hermitian_pd(it->second, "S_z");
        if (it->second.rows() != h.rows()) {
          throw ScenarioError(
              "dimension mismatch: S_z must be square of size rows(H)");
        }
      }
      break;
    }
    case ScenarioKind::interference_channel: {
      const Matrix& h11 = require_matrix(sc, "H11");
      const Matrix& h12 = require_matrix(sc, "H12");
      const Matrix& h21 = require_matrix(sc, "H21");
      const Matrix& h22 = require_matrix(sc, "H22");
      if (h11.rows() != h12.rows() || h21.rows() != h22.rows() ||
          h11.cols() != h21.cols() || h12.cols() != h22.cols()) {
        throw ScenarioError("dimension mismatch among H11/H12/H21/H22");
      }
      if (require_scalar(sc, "power_budget") <= 0.0) {
        throw ScenarioError("scalar 'power_budget' must be positive");
      }
      for (const auto& [name, v] : sc.fixed_precoders) {
        if (name != "V1" && name != "V2") {
          throw ScenarioError("unknown fixed precoder '" + name +
                              "' (expected V1/V2)");
        }
        const Eigen::Index m = name == "V1" ? h11.cols() : h22.cols();
        if (v.rows() != m) {
          throw ScenarioError("fixed precoder '" + name +
                              "' has wrong row count");
        }
      }
      break;
    }
    case ScenarioKind::cognitive_radio: {
      const Matrix& h = require_matrix(sc, "H");
      const Matrix& g = require_matrix(sc, "G");
      if (g.cols() != h.cols()) {
        throw ScenarioError("dimension mismatch: G must have cols(H) columns");
      }
      if (require_scalar(sc, "power_budget") <= 0.0) {
        throw ScenarioError("scalar 'power_budget' must be positive");
      }
      if (require_scalar(sc, "it_limit") <= 0.0) {
        throw ScenarioError("scalar 'it_limit' must be positive");
      }
      break;
    }
  }
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::point_to_point: return "point_to_point";
    case ScenarioKind::interference_channel: return "interference_channel";
    case ScenarioKind::cognitive_radio: return "cognitive_radio";
  }
  return "unknown";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
  if (s == "point_to_point") return ScenarioKind::point_to_point;
  if (s == "interference_channel") return ScenarioKind::interference_channel;
  if (s == "cognitive_radio") return ScenarioKind::cognitive_radio;
  throw ScenarioError("unknown scenario kind '" + s + "'");
}

const Matrix& ScenarioFile::matrix(const std::string& name) const {
  auto it = matrices.find(name);
  if (it == matrices.end()) {
    throw ScenarioError("scenario has no matrix '" + name + "'");
  }
  return it->second;
}

double ScenarioFile::scalar(const std::string& name) const {
  auto it = scalars.find(name);
  if (it == scalars.end()) {
    throw ScenarioError("scenario has no scalar '" + name + "'");
  }
  return it->second;
}

Matrix matrix_from_json(const nlohmann::json& j, const std::string& name) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw ScenarioError("matrix '" + name +
                        "' must be a non-empty nested array of rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw ScenarioError("matrix '" + name + "' is not rectangular");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& e = j[r][c];
      double re = 0.0, im = 0.0;
      if (e.is_number()) {
        re = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
                 e[1].is_number()) {
        re = e[0].get<double>();
        im = e[1].get<double>();
      } else {
        throw ScenarioError("matrix '" + name +
                            "' entry must be a number or a [re, im] pair");
      }
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw ScenarioError("matrix '" + name + "' has a non-finite entry");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(re, im);
    }
  }
  return m;
}

nlohmann::ordered_json matrix_to_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex& z = m(r, c);
      if (z.imag() == 0.0) {
        row.push_back(z.real());
      } else {
        row.push_back(ordered_json::array({z.real(), z.imag()}));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ScenarioFile parse_scenario_json(const nlohmann::json& j) {
  ScenarioFile sc;
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ScenarioError("missing required string field 'kind'");
  }
  sc.kind = scenario_kind_from_string(j["kind"].get<std::string>());
  if (j.contains("matrices")) {
    for (const auto& [name, value] : j["matrices"].items()) {
      sc.matrices.emplace(name, matrix_from_json(value, name));
    }
  }
  if (j.contains("scalars")) {
    for (const auto& [name, value] : j["scalars"].items()) {
      if (!value.is_number()) {
        throw ScenarioError("scalar '" + name + "' must be a number");
      }
      sc.scalars.emplace(name, value.get<double>());
    }
  }
  if (j.contains("fixed_precoders")) {
    if (sc.kind != ScenarioKind::interference_channel) {
      throw ScenarioError(
          "'fixed_precoders' is only valid for interference_channel scenarios");
    }
    for (const auto& [name, value] : j["fixed_precoders"].items()) {
      sc.fixed_precoders.emplace(name, matrix_from_json(value, name));
    }
  }
  if (j.contains("metadata")) sc.metadata = j["metadata"].get<std::string>();
  validate(sc);
  return sc;
}

ScenarioFile parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError("cannot open scenario file '" + path.string() + "'");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError("malformed JSON in '" + path.string() +
                        "': " + e.what());
  }
  return parse_scenario_json(j);
}

nlohmann::ordered_json scenario_to_json(const ScenarioFile& sc) {
  ordered_json j;
  j["kind"] = to_string(sc.kind);
  ordered_json mats;
  for (const auto& [name, m] : sc.matrices) mats[name] = matrix_to_json(m);
  j["matrices"] = std::move(mats);
  ordered_json scal;
  for (const auto& [name, v] : sc.scalars) scal[name] = v;
  j["scalars"] = std::move(scal);
  if (!sc.fixed_precoders.empty()) {
    ordered_json fp;
    for (const auto& [name, m] : sc.fixed_precoders) fp[name] = matrix_to_json(m);
    j["fixed_precoders"] = std::move(fp);
  }
  if (!sc.metadata.empty()) j["metadata"] = sc.metadata;
  return j;
}

std::string scenario_digest(const ScenarioFile& sc) {
  const std::string dump = scenario_to_json(sc).dump();
  // FNV-1a 64-bit
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char ch : dump) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << hash;
  return os.str();
}

}  // namespace mimodiag
