// Copyright 2026 The qds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qds/cli.hpp"

namespace qds::cli {

namespace {

constexpr int kMaxDim = 64;

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }
[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::ValidationError, msg); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(what + ": " + e.what());
  }
}

Complex complex_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_fail(what + ": complex entries must be [re, im] pairs of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Matrix> matrix_list(const Json& j, int dim, const std::string& what) {
  if (!j.is_array()) parse_fail(what + " must be an array of matrices");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(matrix_from_json(j[k], dim, dim, what + "[" + std::to_string(k) + "]"));
  }
  return out;
}

bool tolerances_are_default(const Tolerances& t) {
  const Tolerances d;
  return t.atol == d.atol && t.rank_rtol == d.rank_rtol && t.psd_tol == d.psd_tol;
}

Tolerances parse_tolerances(const Json& j) {
  if (!j.is_object()) parse_fail("tolerances must be an object");
  Tolerances tol;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) parse_fail("tolerances." + key + " must be a number");
    const double v = value.get<double>();
    if (key == "atol") {
      tol.atol = v;
    } else if (key == "rank_rtol") {
      tol.rank_rtol = v;
    } else if (key == "psd_tol") {
      tol.psd_tol = v;
    } else {
      invalid("unknown key tolerances." + key);
    }
  }
  tol.validate();
  return tol;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, int rows, int cols, const std::string& what) {
  if (!j.is_array()) parse_fail(what + " must be a nested array");
  if (static_cast<int>(j.size()) != rows) {
    invalid(what + " has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  }
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array()) parse_fail(what + " row " + std::to_string(i) + " is not an array");
    if (static_cast<int>(row.size()) != cols) {
      invalid(what + " row " + std::to_string(i) + " has " + std::to_string(row.size()) +
              " entries, expected " + std::to_string(cols));
    }
    for (int c = 0; c < cols; ++c) m(i, c) = complex_from_json(row[c], what);
  }
  if (!all_finite(m)) invalid(what + " has non-finite entries");
  return m;
}

// ---------------------------------------------------------------------------

Semigroup ModelSpec::build() const {
  if (discrete) return Semigroup(QuantumChannel(kraus_ops, tol));
  return Semigroup(LindbladGenerator(hamiltonian, lindblad_ops, tol));
}

ModelSpec parse_model(const Json& doc) {
  static const std::set<std::string> allowed{"dim",       "label",      "hamiltonian", "lindblad_ops",
                                             "kraus_ops", "tolerances", "horizon"};
  if (!doc.is_object()) parse_fail("model must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) invalid("unknown key '" + key + "'");
  }
  if (!doc.contains("dim")) invalid("missing 'dim'");
  if (!doc["dim"].is_number_integer()) parse_fail("'dim' must be an integer");

  ModelSpec spec;
  spec.dim = doc["dim"].get<int>();
  if (spec.dim < 1 || spec.dim > kMaxDim) invalid("'dim' must lie in [1, 64]");
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) parse_fail("'label' must be a string");
    spec.label = doc["label"].get<std::string>();
  }
  if (doc.contains("tolerances")) spec.tol = parse_tolerances(doc["tolerances"]);
  if (doc.contains("horizon")) {
    if (!doc["horizon"].is_number()) parse_fail("'horizon' must be a number");
    const double t = doc["horizon"].get<double>();
    if (!(t > 0.0) || !std::isfinite(t)) invalid("'horizon' must be positive");
    spec.horizon = t;
  }

  const bool has_generator = doc.contains("hamiltonian") || doc.contains("lindblad_ops");
  const bool has_kraus = doc.contains("kraus_ops");
  if (has_generator && has_kraus) invalid("give either hamiltonian/lindblad_ops or kraus_ops, not both");
  if (!has_generator && !has_kraus) invalid("no model: need hamiltonian/lindblad_ops or kraus_ops");

  const int d = spec.dim;
  try {
    if (has_kraus) {
      spec.discrete = true;
      spec.kraus_ops = matrix_list(doc["kraus_ops"], d, "kraus_ops");
      if (spec.kraus_ops.empty()) invalid("kraus_ops must not be empty");
      const QuantumChannel ch(spec.kraus_ops, spec.tol);
      spec.structure = check_structure(ch);
    } else {
      spec.hamiltonian = doc.contains("hamiltonian")
                             ? matrix_from_json(doc["hamiltonian"], d, d, "hamiltonian")
                             : zero(d);
      if (doc.contains("lindblad_ops")) spec.lindblad_ops = matrix_list(doc["lindblad_ops"], d, "lindblad_ops");
      const LindbladGenerator gen(spec.hamiltonian, spec.lindblad_ops, spec.tol);
      spec.structure = check_structure(gen);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::ValidationError) throw;
    invalid(e.what());
  }
  return spec;
}

ModelSpec parse_model_text(const std::string& text) { return parse_model(parse_json(text, "model")); }

ModelSpec parse_model_file(const std::string& path) {
  return parse_model(parse_json(read_file(path), path));
}

Json model_to_json(const ModelSpec& spec) {
  Json doc;
  doc["dim"] = spec.dim;
  if (!spec.label.empty()) doc["label"] = spec.label;
  if (spec.discrete) {
    Json ks = Json::array();
    for (const Matrix& k : spec.kraus_ops) ks.push_back(matrix_to_json(k));
    doc["kraus_ops"] = std::move(ks);
  } else {
    doc["hamiltonian"] = matrix_to_json(spec.hamiltonian);
    Json ls = Json::array();
    for (const Matrix& l : spec.lindblad_ops) ls.push_back(matrix_to_json(l));
    doc["lindblad_ops"] = std::move(ls);
  }
  if (!tolerances_are_default(spec.tol)) {
    doc["tolerances"] = {{"atol", spec.tol.atol}, {"rank_rtol", spec.tol.rank_rtol},
                         {"psd_tol", spec.tol.psd_tol}};
  }
  if (spec.horizon) doc["horizon"] = *spec.horizon;
  return doc;
}

ModelSpec spec_from_fixture(const Fixture& f) {
  ModelSpec spec;
  spec.dim = f.model.dim();
  spec.label = f.name + ": " + f.label;
  spec.horizon = f.horizon;
  if (const QuantumChannel* ch = f.model.channel()) {
    spec.discrete = true;
    spec.kraus_ops = ch->kraus();
    spec.structure = check_structure(*ch);
  } else {
    const LindbladGenerator& gen = *f.model.generator();
    spec.hamiltonian = gen.hamiltonian();
    spec.lindblad_ops = gen.lindblad_ops();
    spec.structure = check_structure(gen);
  }
  return spec;
}

// ---------------------------------------------------------------------------

DensityMatrix parse_state(const Json& doc, int dim, const Tolerances& tol) {
  const Json* m = &doc;
  if (doc.is_object()) {
    for (const auto& [key, value] : doc.items()) {
      if (key != "rho" && key != "dim") invalid("unknown key '" + key + "' in state file");
    }
    if (!doc.contains("rho")) invalid("state file needs 'rho'");
    if (doc.contains("dim") && (!doc["dim"].is_number_integer() || doc["dim"].get<int>() != dim)) {
      invalid("state dimension does not match the model");
    }
    m = &doc["rho"];
  }
  const Matrix rho = matrix_from_json(*m, dim, dim, "rho");
  try {
    return DensityMatrix(rho, tol);
  } catch (const Error& e) {
    invalid(std::string("state: ") + e.what());
  }
}

DensityMatrix parse_state_file(const std::string& path, int dim, const Tolerances& tol) {
  return parse_state(parse_json(read_file(path), path), dim, tol);
}

Json projection_to_json(const Projection& p) {
  return Json{{"rank", p.rank()}, {"basis", matrix_to_json(p.basis())}};
}

Projection projection_from_json(const Json& j, int dim, const Tolerances& tol) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("basis") || !j["rank"].is_number_integer()) {
    parse_fail("projection needs integer 'rank' and 'basis'");
  }
  const int rank = j["rank"].get<int>();
  if (rank < 0 || rank > dim) invalid("projection rank out of range");
  if (rank == 0) return Projection::zero(dim);
  return Projection::from_basis(matrix_from_json(j["basis"], dim, rank, "basis"), dim, tol);
}

// ---------------------------------------------------------------------------

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, "not a number: '" + item + "'");
    }
    if (used != item.size() || !std::isfinite(v)) throw Error(ErrorKind::Usage, "not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::Usage, "empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_real_list(text)) {
    if (v != std::floor(v) || std::abs(v) > 1e6) throw Error(ErrorKind::Usage, "not an integer list: " + text);
    out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace qds::cli
