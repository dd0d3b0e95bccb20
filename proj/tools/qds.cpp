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

// qds: long-time analysis of finite-dimensional quantum dynamical semigroups.
//
//   qds analyze --model F [--horizon T] [--tol X] [--output F2] [--pretty]
//   qds verify [--seed N] [--trials K] [--dims 2,3,4]
//   qds evolve --model F --state F3 --times t1,t2,...
//   qds examples list|emit NAME
//
// Exit codes: 0 success, 1 validation or parse error, 2 property or theorem
// failure, 3 internal numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qds/cli.hpp"

namespace {

using namespace qds;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("QDS_SEED")) {
    try {
      std::size_t used = 0;
      const std::string text(env);
      const unsigned long long v = std::stoull(text, &used);
      if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Usage, std::string("QDS_SEED is not an unsigned integer: '") + env + "'");
  }
  return fallback;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ValidationError, "cannot write '" + path + "'");
  out << text << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Long-time asymptotics of finite-dimensional quantum dynamical semigroups"};
  app.require_subcommand(1);

  std::string model_path;
  std::string output_path;
  std::optional<double> horizon;
  std::optional<double> atol;
  std::optional<std::uint64_t> seed;
  bool pretty = false;
  auto* analyze = app.add_subcommand("analyze", "Recurrent structure and theorem checks for a model");
  analyze->add_option("--model", model_path, "model JSON file")->required();
  analyze->add_option("--horizon", horizon, "evolution horizon T (iterations for channels)");
  analyze->add_option("--tol", atol, "absolute residual tolerance");
  analyze->add_option("--output", output_path, "write the JSON report here instead of stdout");
  analyze->add_option("--seed", seed, "seed for randomized checks (default: QDS_SEED, then 1)");
  analyze->add_flag("--pretty", pretty, "print a summary table to stderr");

  int trials = 100;
  std::string dims = "2,3,4";
  auto* verify = app.add_subcommand("verify", "Randomized property suite");
  verify->add_option("--seed", seed, "master seed (default: QDS_SEED, then 42)");
  verify->add_option("--trials", trials, "trials per property");
  verify->add_option("--dims", dims, "comma-separated dimensions");

  std::string state_path;
  std::string times;
  auto* evolve = app.add_subcommand("evolve", "Schrodinger-picture evolution of a state");
  evolve->add_option("--model", model_path, "model JSON file")->required();
  evolve->add_option("--state", state_path, "state JSON file")->required();
  evolve->add_option("--times", times, "comma-separated times")->required();

  std::string action;
  std::string name;
  auto* examples = app.add_subcommand("examples", "List or emit the bundled models");
  examples->add_option("action", action, "list or emit")->required()->check(CLI::IsMember({"list", "emit"}));
  examples->add_option("name", name, "model name for emit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) {
      const cli::ModelSpec spec = cli::parse_model_file(model_path);
      cli::AnalyzeOptions opts;
      opts.horizon = horizon;
      opts.atol = atol;
      opts.seed = resolve_seed(seed, 1);
      const cli::AnalysisReport report = cli::run_analyze(spec, opts);
      write_output(report.json.dump(2), output_path);
      if (pretty) cli::print_pretty(report, std::cerr);
      return report.pass() ? 0 : 2;
    }
    if (verify->parsed()) {
      cli::VerifyOptions opts;
      opts.seed = resolve_seed(seed, 42);
      opts.trials = trials;
      opts.dims = cli::parse_int_list(dims);
      const cli::VerifySummary summary = cli::run_verify(opts);
      std::cout << "qds verify seed=" << opts.seed << " trials=" << opts.trials << " dims=" << dims << "\n"
                << summary.text();
      return summary.pass() ? 0 : 2;
    }
    if (evolve->parsed()) {
      const cli::ModelSpec spec = cli::parse_model_file(model_path);
      const DensityMatrix rho = cli::parse_state_file(state_path, spec.dim, spec.tol);
      std::cout << cli::run_evolve(spec, rho, cli::parse_real_list(times)).dump(2) << "\n";
      return 0;
    }
    if (examples->parsed()) {
      if (action == "list") {
        if (!name.empty()) throw Error(ErrorKind::Usage, "'examples list' takes no name");
        for (const std::string& n : fixture_names()) std::cout << n << "  " << fixture(n).label << "\n";
        return 0;
      }
      if (name.empty()) throw Error(ErrorKind::Usage, "'examples emit' needs a model name");
      std::cout << cli::model_to_json(cli::spec_from_fixture(fixture(name))).dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "qds: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "qds: internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
