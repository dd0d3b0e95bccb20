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

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "qds/cli.hpp"
#include "qds/harmonic.hpp"

namespace qds::cli {

namespace {

constexpr double kDecayTol = 1e-8;

Check at_most(std::string name, double residual, double threshold, std::string note = {}) {
  return {std::move(name), residual, threshold, residual <= threshold, std::move(note)};
}

Json check_to_json(const Check& c) {
  Json j{{"name", c.name}, {"residual", c.residual}, {"threshold", c.threshold}, {"pass", c.pass}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

double structure_residual(const StructureReport& s) {
  return std::max({s.unitality_residual, s.trace_preservation_residual, s.hamiltonian_hermiticity,
                   s.duality_residual});
}

}  // namespace

bool AnalysisReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

AnalysisReport run_analyze(const ModelSpec& spec, const AnalyzeOptions& opts) {
  Tolerances tol = spec.tol;
  if (opts.atol) tol.atol = *opts.atol;
  tol.validate();
  const double horizon = opts.horizon.value_or(spec.horizon.value_or(30.0));
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorKind::ValidationError, "horizon must be positive");
  }
  const int d = spec.dim;
  const Semigroup sg = spec.build();
  const AsymptoticOptions ao{horizon, kDecayTol, opts.seed};

  const RecurrentReport rep = recurrent_projection(sg, ao, tol);
  const EnclosureDecomposition& dec = rep.decomposition;

  AnalysisReport out;
  std::vector<Check>& checks = out.checks;
  checks.push_back(at_most("model_structure", structure_residual(spec.structure), tol.atol));
  checks.push_back(at_most("r_o_subharmonic", invariance_leak(sg, rep.r_o), tol.atol));

  double overlap = 0.0;
  for (std::size_t i = 0; i < dec.minimal_projections.size(); ++i) {
    for (std::size_t j = i + 1; j < dec.minimal_projections.size(); ++j) {
      overlap = std::max(overlap, op_norm(dec.minimal_projections[i].matrix() *
                                          dec.minimal_projections[j].matrix()));
    }
  }
  checks.push_back(at_most("enclosures_orthogonal", overlap, tol.atol));

  double enclosure_leak = 0.0;
  int non_minimal = 0;
  for (const Projection& q : dec.minimal_projections) {
    enclosure_leak = std::max(enclosure_leak, invariance_leak(sg, q));
    const StationarySpace local = stationary_space(sg.restrict(q), tol);
    if (local.dim != 1 || local.states.front().support(tol).rank() != q.rank()) ++non_minimal;
  }
  checks.push_back(at_most("enclosures_subharmonic", enclosure_leak, tol.atol));
  checks.push_back(at_most("enclosures_minimal", non_minimal, 0.0,
                           "blocks without a unique faithful stationary state"));

  double support_excess = 0.0;
  for (const DensityMatrix& w : rep.stationary.states) {
    const Matrix gap = rep.r_o.matrix() - w.support(tol).matrix();
    support_excess = std::max(support_excess, std::max(0.0, -min_eigenvalue(gap, tol)));
  }
  checks.push_back(at_most("stationary_supports_below_r_o", support_excess, tol.atol));
  checks.push_back(at_most("r_equals_r_o", rep.r_distance, tol.atol));
  checks.push_back(at_most("alpha_T_r_o_near_one", rep.sup_deviation, kDecayTol));
  checks.push_back(at_most("alpha_T_transient_decays", rep.transient_norm, kDecayTol));
  checks.push_back(at_most("limit_support_full", d - rep.x_support_rank, 0.0,
                           "rank deficiency of alpha_T(r_o)"));
  checks.push_back(at_most("faithful_family_gives_identity",
                           rep.faithful_family ? d - rep.r_o.rank() : 0, 0.0));

  const std::vector<DecayIdealTest> decay = decay_ideal_basis(sg, rep.r_o, ao, tol);
  int disagreements = 0;
  int algebraic_members = 0;
  int dynamic_members = 0;
  for (const DecayIdealTest& t : decay) {
    disagreements += t.agree() ? 0 : 1;
    algebraic_members += t.in_ideal_algebraic() ? 1 : 0;
    dynamic_members += t.in_ideal_dynamic() ? 1 : 0;
  }
  checks.push_back(at_most("decay_ideal_agreement", disagreements, 0.0,
                           "matrix units classified differently"));

  double equivalence = 0.0;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      equivalence = std::max(equivalence,
                             asymptotic_equivalence_check(sg, matrix_unit(d, i, j), rep.r_o, horizon));
    }
  }
  checks.push_back(at_most("asymptotic_equivalence", equivalence, std::sqrt(kDecayTol)));

  Json minimality;
  try {
    const MinimalityCertificate cert =
        minimality_certificate(sg, rep.r_o, dec, opts.minimality_trials, ao, tol);
    double closest = std::numeric_limits<double>::infinity();
    for (const EnclosureWitness& w : cert.witnesses) closest = std::min(closest, w.distance_from_one);
    if (cert.witnesses.empty()) closest = 1.0;
    checks.push_back(at_most("minimality_sweep", cert.worst_deficit, 10.0 * tol.atol));
    checks.push_back({"minimality_witnesses", closest, kDecayTol, closest > kDecayTol,
                      "smallest 1 - min eig alpha_T(r_o - q); must exceed the threshold"});
    minimality = {{"trials", cert.trials}, {"near_limit", cert.near_limit},
                  {"violations", cert.violations}, {"worst_deficit", cert.worst_deficit}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TheoremViolation) throw;
    checks.push_back({"minimality_sweep", 1.0, 10.0 * tol.atol, false, e.what()});
    minimality = {{"error", e.what()}};
  }

  Json& j = out.json;
  j["label"] = spec.label;
  j["dim"] = d;
  j["kind"] = spec.discrete ? "channel" : "generator";
  j["horizon"] = horizon;
  j["seed"] = opts.seed;
  j["tolerances"] = {{"atol", tol.atol}, {"rank_rtol", tol.rank_rtol}, {"psd_tol", tol.psd_tol},
                     {"decay", kDecayTol}};
  j["structure"] = {{"unitality_residual", spec.structure.unitality_residual},
                    {"trace_preservation_residual", spec.structure.trace_preservation_residual},
                    {"hamiltonian_hermiticity", spec.structure.hamiltonian_hermiticity},
                    {"duality_residual", spec.structure.duality_residual}};
  j["stationary"] = {{"dim", rep.stationary.dim}, {"generating_states", rep.stationary.states.size()}};

  Json ranks = Json::array();
  Json projections = Json::array();
  for (const Projection& q : dec.minimal_projections) {
    ranks.push_back(q.rank());
    projections.push_back(projection_to_json(q));
  }
  j["enclosures"] = {{"ranks", ranks},
                     {"is_unique", dec.is_unique},
                     {"fixed_algebra_dim", dec.fixed_algebra_dim},
                     {"projections", projections}};
  j["r_o"] = projection_to_json(rep.r_o);
  j["r"] = projection_to_json(rep.r);
  j["r_equals_r_o"] = rep.r_equals_ro;
  j["faithful_family"] = rep.faithful_family;
  j["sup_deviation"] = rep.sup_deviation;
  j["transient_norm"] = rep.transient_norm;
  j["decay_ideal"] = {{"r_o_complement_rank", d - rep.r_o.rank()},
                      {"basis_size", decay.size()},
                      {"algebraic_members", algebraic_members},
                      {"dynamic_members", dynamic_members},
                      {"disagreements", disagreements}};
  j["minimality"] = minimality;
  const double suggested = suggested_horizon(sg, 1e-14, tol);
  j["suggested_horizon"] = std::isfinite(suggested) ? Json(suggested) : Json(nullptr);

  Json cj = Json::array();
  for (const Check& c : checks) cj.push_back(check_to_json(c));
  j["checks"] = cj;
  j["pass"] = out.pass();
  return out;
}

void print_pretty(const AnalysisReport& report, std::ostream& os) {
  const Json& j = report.json;
  os << "model      " << j["label"].get<std::string>() << " (" << j["kind"].get<std::string>()
     << ", d = " << j["dim"].get<int>() << ", T = " << j["horizon"].get<double>() << ")\n";
  os << "stationary dim " << j["stationary"]["dim"].get<int>() << "\n";
  os << "enclosures " << j["enclosures"]["ranks"].dump()
     << (j["enclosures"]["is_unique"].get<bool>() ? " unique" : " not unique") << "\n";
  os << "r_o rank   " << j["r_o"]["rank"].get<int>() << ", r rank " << j["r"]["rank"].get<int>() << "\n";
  os << std::left;
  for (const Check& c : report.checks) {
    os << "  " << std::setw(34) << c.name << std::setw(14) << std::scientific << std::setprecision(3)
       << c.residual << (c.pass ? "pass" : "FAIL") << "\n";
  }
  os << std::defaultfloat << (report.pass() ? "all checks pass" : "some checks FAIL") << "\n";
}

Json run_evolve(const ModelSpec& spec, const DensityMatrix& rho, const std::vector<double>& times) {
  if (rho.dim() != spec.dim) throw Error(ErrorKind::ValidationError, "state and model dimensions differ");
  const Semigroup sg = spec.build();
  for (double t : times) {
    if (!(t >= 0.0)) throw Error(ErrorKind::NegativeTime, "times must be non-negative");
  }
  Json states = Json::array();
  for (double t : times) {
    const Matrix out = sg.schrodinger(rho.matrix(), t);
    const Matrix h = 0.5 * (out + out.adjoint());
    Json s{{"t", t}};
    if (sg.is_discrete()) s["steps"] = sg.steps(t);
    s["trace"] = out.trace().real();
    s["min_eigenvalue"] = min_eigenvalue(h, spec.tol);
    s["rho"] = matrix_to_json(out);
    states.push_back(std::move(s));
  }
  return Json{{"label", spec.label}, {"dim", spec.dim}, {"states", states}};
}

}  // namespace qds::cli
