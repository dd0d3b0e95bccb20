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

// Model files, analysis reports and the verification harness behind the
// `qds` command-line tool.
//
// Model files are strict JSON:
//
//   {"dim": 2, "label": "decay",
//    "hamiltonian": [[[0,0],[0,0]],[[0,0],[0,0]]],
//    "lindblad_ops": [ [[[0,0],[1,0]],[[0,0],[0,0]]] ],
//    "tolerances": {"atol": 1e-9}, "horizon": 30}
//
// Complex entries are [re, im] pairs and matrices are row-major nested
// arrays. Exactly one of {hamiltonian, lindblad_ops} or {kraus_ops} is given;
// a generator may omit either of its two keys. Unknown keys are rejected.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qds/asymptotics.hpp"
#include "qds/models.hpp"

namespace qds::cli {

using Json = nlohmann::ordered_json;

struct ModelSpec {
  int dim = 0;
  std::string label;
  bool discrete = false;
  Matrix hamiltonian;
  std::vector<Matrix> lindblad_ops;
  std::vector<Matrix> kraus_ops;
  Tolerances tol;
  std::optional<double> horizon;
  StructureReport structure;

  Semigroup build() const;
};

/// ParseError for malformed JSON or wrongly shaped values, ValidationError
/// for inconsistent dimensions, non-Hermitian H, non-unital Kraus families,
/// unknown keys, or both/neither model forms.
ModelSpec parse_model(const Json& doc);
ModelSpec parse_model_text(const std::string& text);
ModelSpec parse_model_file(const std::string& path);

Json model_to_json(const ModelSpec& spec);
ModelSpec spec_from_fixture(const Fixture& f);

Json matrix_to_json(const Matrix& m);
/// Reads a rows x cols matrix of [re, im] pairs; `what` names it in errors.
Matrix matrix_from_json(const Json& j, int rows, int cols, const std::string& what);
/// A bare matrix or {"rho": matrix}; validated as a density matrix.
DensityMatrix parse_state(const Json& doc, int dim, const Tolerances& tol);
DensityMatrix parse_state_file(const std::string& path, int dim, const Tolerances& tol);

Json projection_to_json(const Projection& p);
/// Rebuilds a projection from its reported range basis.
Projection projection_from_json(const Json& j, int dim, const Tolerances& tol = {});

// ---------------------------------------------------------------------------

struct AnalyzeOptions {
  std::optional<double> horizon;  // overrides the model's horizon
  std::optional<double> atol;     // overrides the model's atol
  std::uint64_t seed = 1;
  int minimality_trials = 200;
};

struct Check {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

struct AnalysisReport {
  Json json;
  std::vector<Check> checks;
  bool pass() const;
};

/// Runs the full long-time analysis. Theorem-level failures become failing
/// checks; input errors and numerical breakdowns propagate as Error.
AnalysisReport run_analyze(const ModelSpec& spec, const AnalyzeOptions& opts);
void print_pretty(const AnalysisReport& report, std::ostream& os);

// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::uint64_t seed = 42;
  int trials = 100;
  std::vector<int> dims{2, 3, 4};
};

struct PropertyResult {
  std::string name;
  int trials = 0;
  int passed = 0;
  int skipped = 0;  // undecidable draws (residuals between atol and 10 atol)
  double worst = 0.0;
  std::string detail;

  bool ok() const { return passed + skipped == trials; }
};

struct VerifySummary {
  std::vector<PropertyResult> properties;
  bool pass() const;
  std::string text() const;
};

/// Deterministic given the options: trials fan out over threads, results are
/// collected by index. Throws Usage for trials < 1 or an empty/invalid dims list.
VerifySummary run_verify(const VerifyOptions& opts);

// ---------------------------------------------------------------------------

/// nu_t(rho) for each time, as a JSON document.
Json run_evolve(const ModelSpec& spec, const DensityMatrix& rho, const std::vector<double>& times);

/// "1,2.5,10" -> {1, 2.5, 10}; Usage on malformed input.
std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace qds::cli
