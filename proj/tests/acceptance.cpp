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

// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qds/asymptotics.hpp"
#include "qds/models.hpp"

using namespace qds;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Projection diag_projection(std::initializer_list<Complex> entries) {
  return Projection::from_matrix(diag(entries));
}

StructuredModel structured(Rng& rng, int trial, bool channel) {
  const int d = 2 + trial % 3;
  const BlockLayout layout = random_layout(d, rng);
  return channel ? random_structured_channel(layout, 2 + trial % 3, rng)
                 : random_structured_generator(layout, 1 + trial % 3, rng);
}

Outcome four_way() {
  Rng rng(101);
  const int n = 240;
  int disagreements = 0;
  int decisive = 0;
  for (int trial = 0; trial < n; ++trial) {
    const int d = 2 + trial % 3;
    QuantumChannel ch = random_channel(d, 1 + trial % 4, rng);
    Projection p = rng.projection(d, rng.uniform_int(0, d));
    if (trial % 2 == 1) {
      const StructuredModel m = structured(rng, trial, true);
      ch = *m.model.channel();
      p = random_invariant_projection(m, rng);
    }
    const HarmonicityReport rep = subharmonic_report(ch, p, 32, {}, rng.next_seed());
    if (!rep.conditions_agree()) ++disagreements;
    const Decision k = decide(kraus_leak(ch, p), 1e-9);
    if (k != Decision::Indeterminate) {
      ++decisive;
      if ((k == Decision::Holds) != rep.subharmonic) ++disagreements;
    }
  }
  return {disagreements == 0, std::to_string(n) + " channels, " + std::to_string(decisive) +
                                  " decisive, " + std::to_string(disagreements) + " disagreements"};
}

Outcome lattice() {
  Rng rng(102);
  double worst = 0.0;
  double dual = 0.0;
  int families = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const StructuredModel m = structured(rng, trial, trial % 2 == 0);
    std::vector<Projection> family;
    std::vector<Projection> complements;
    const int size = rng.uniform_int(2, 4);
    for (int k = 0; k < size; ++k) {
      family.push_back(random_invariant_projection(m, rng));
      complements.push_back(family.back().complement());
    }
    const LatticeClosure sub = subharmonic_closure(m.model, family);
    const LatticeClosure super = superharmonic_closure(m.model, complements);
    worst = std::max({worst, sub.inf_leak, sub.sup_leak, super.inf_leak, super.sup_leak});
    dual = std::max({dual, distance(super.sup, sub.inf.complement()), distance(super.inf, sub.sup.complement())});
    ++families;
  }
  return {worst <= 1e-8 && dual <= 1e-8,
          std::to_string(families) + " families, worst leak " + fmt("%.2e, duality gap %.2e", worst, dual)};
}

Outcome recurrent_fixtures() {
  AsymptoticOptions opts;
  opts.horizon = 30.0;
  const RecurrentReport ad = recurrent_projection(fixture("AD").model, opts);
  const RecurrentReport m3 = recurrent_projection(fixture("M3").model, opts);
  const double ad_sup = op_norm(fixture("AD").model.heisenberg(ad.r_o.matrix(), 30.0) - identity(2));
  const double m3_transient = op_norm(fixture("M3").model.heisenberg(m3.r_o.complement().matrix(), 30.0));
  int disagreements = 0;
  int units = 0;
  for (const std::string& name : fixture_names()) {
    const Fixture f = fixture(name);
    AsymptoticOptions fo;
    fo.horizon = f.horizon;
    const RecurrentReport rep = recurrent_projection(f.model, fo);
    for (const DecayIdealTest& t : decay_ideal_basis(f.model, rep.r_o, fo)) {
      ++units;
      disagreements += t.agree() ? 0 : 1;
    }
  }
  return {ad_sup <= 1e-9 && m3_transient <= 1e-12 && disagreements == 0,
          fmt("AD sup %.2e, M3 transient %.2e, ", ad_sup, m3_transient) + std::to_string(disagreements) +
              " decay-ideal disagreements over " + std::to_string(units) + " matrix units"};
}

Outcome closed_form() {
  const Semigroup ad = fixture("AD").model;
  const Semigroup m3 = fixture("M3").model;
  double worst = 0.0;
  for (double t : {0.5, 1.0, 2.0, 5.0}) {
    const Matrix p1 = matrix_unit(2, 1, 1);
    const Matrix p2 = matrix_unit(3, 2, 2);
    worst = std::max(worst, op_norm(ad.heisenberg(p1, t) - std::exp(-t) * p1));
    worst = std::max(worst, op_norm(m3.heisenberg(p2, t) - std::exp(-2.0 * t) * p2));
  }
  return {worst <= 1e-10, fmt("worst deviation %.2e", worst)};
}

bool matches_one_of(const Projection& q, const std::vector<Matrix>& targets, double tol) {
  return std::any_of(targets.begin(), targets.end(),
                     [&](const Matrix& t) { return op_norm(q.matrix() - t) <= tol; });
}

Outcome enclosures() {
  const EnclosureDecomposition m3 = minimal_enclosures(fixture("M3").model);
  const std::vector<Matrix> m3_targets{diag({1.0, 0.0, 0.0}), diag({0.0, 1.0, 0.0})};
  bool m3_ok = m3.is_unique && m3.minimal_projections.size() == 2;
  for (const Projection& q : m3.minimal_projections) m3_ok = m3_ok && matches_one_of(q, m3_targets, 1e-8);
  m3_ok = m3_ok && distance(m3.minimal_projections[0], m3.minimal_projections[1]) > 0.5;

  const EnclosureDecomposition dfs = minimal_enclosures(fixture("DFS3").model);
  bool dfs_ok = !dfs.is_unique && dfs.minimal_projections.size() == 2;
  const Matrix block = diag({1.0, 1.0, 0.0});
  if (dfs_ok) {
    const Projection& a = dfs.minimal_projections[0];
    const Projection& b = dfs.minimal_projections[1];
    dfs_ok = a.rank() == 1 && b.rank() == 1 && op_norm(a.matrix() * b.matrix()) <= 1e-8 &&
             op_norm(block * a.matrix() - a.matrix()) <= 1e-8 && op_norm(block * b.matrix() - b.matrix()) <= 1e-8;
    const std::vector<Projection> both{a, b};
    dfs_ok = dfs_ok && op_norm(proj_supremum(both).matrix() - block) <= 1e-8;
  }

  const EnclosureDecomposition ad = minimal_enclosures(fixture("AD").model);
  const bool ad_ok = ad.minimal_projections.size() == 1 &&
                     op_norm(ad.minimal_projections[0].matrix() - diag({1.0, 0.0})) <= 1e-8;
  return {m3_ok && dfs_ok && ad_ok, std::string("M3 ") + (m3_ok ? "ok" : "wrong") + ", DFS3 " +
                                        (dfs_ok ? "ok" : "wrong") + ", AD " + (ad_ok ? "ok" : "wrong")};
}

Outcome faithful() {
  const RecurrentReport th = recurrent_projection(fixture("TH").model);
  const double r_dev = op_norm(th.r_o.matrix() - identity(2));
  const double w_dev = op_norm(th.stationary.states.front().matrix() - diag({2.0 / 3.0, 1.0 / 3.0}));
  return {th.faithful_family && r_dev <= 1e-10 && w_dev <= 1e-10,
          fmt("||r_o - 1|| %.2e, ||w - diag(2/3,1/3)|| %.2e", r_dev, w_dev)};
}

Outcome r_equals_r_o() {
  const Tolerances tol;
  int checked = 0;
  int mismatches = 0;
  double worst = 0.0;
  auto run = [&](const Semigroup& sg, double horizon, std::uint64_t seed) {
    AsymptoticOptions opts;
    opts.horizon = horizon;
    opts.seed = seed;
    const RecurrentReport rep = recurrent_projection(sg, opts, tol);
    ++checked;
    worst = std::max(worst, rep.r_distance);
    if (decide(rep.r_distance, tol.atol) != Decision::Holds) ++mismatches;
  };
  for (const std::string& name : fixture_names()) run(fixture(name).model, fixture(name).horizon, 1);
  Rng rng(107);
  for (int trial = 0; trial < 60; ++trial) {
    const StructuredModel m = structured(rng, trial, trial % 2 == 1);
    run(m.model, std::max(30.0, suggested_horizon(m.model, 1e-12)), rng.next_seed());
  }
  return {mismatches == 0, std::to_string(checked) + " models, worst ||r - r_o|| " + fmt("%.2e", worst)};
}

Outcome mohari() {
  Rng rng(108);
  double deficit = 0.0;
  double dilation = 0.0;
  int nontrivial = 0;
  const int n = 120;
  for (int trial = 0; trial < n; ++trial) {
    const int d = 2 + trial % 3;
    Matrix seed_state = d * rng.density(d).matrix();
    Semigroup sg(random_channel(d, 1 + trial % 3, rng));
    if (trial % 3 != 0) {
      const StructuredModel m = structured(rng, trial, true);
      sg = m.model;
      if (trial % 3 == 1) seed_state = m.blocks[rng.uniform_int(0, static_cast<int>(m.blocks.size()) - 1)].matrix();
    }
    const QuantumChannel& ch = *sg.channel();
    const Matrix y = sg.ergodic_projection(Picture::Heisenberg).apply(seed_state);
    const Matrix x = 0.5 * (y + y.adjoint());
    const MohariResult r = mohari_support_check(ch, x);
    const Matrix s = r.support.matrix();
    deficit = std::max(deficit, std::max(0.0, -min_eigenvalue(s - apply_heisenberg(ch, s))));
    if (r.support.rank() < d) ++nontrivial;
    dilation = std::max(dilation, dilation_residual(ch, stinespring_dilate(ch)));
  }
  return {deficit <= 1e-8 && dilation <= 1e-12,
          std::to_string(n) + " channels (" + std::to_string(nontrivial) + " with proper support), " +
              fmt("order deficit %.2e, Stinespring residual %.2e", deficit, dilation)};
}

Outcome cesaro_rate() {
  const Semigroup ad = fixture("AD").model;
  const DensityMatrix excited(diag({0.0, 1.0}));
  const Matrix ground = diag({1.0, 0.0});
  auto error = [&](double t) {
    return trace_norm(cesaro_mean(ad, excited, t, static_cast<int>(400 * t)).matrix() - ground);
  };
  const double e10 = error(10.0);
  const double e20 = error(20.0);
  const double e40 = error(40.0);
  const double r1 = e20 / e10;
  const double r2 = e40 / e20;
  return {r1 >= 0.4 && r1 <= 0.6 && r2 >= 0.4 && r2 <= 0.6, fmt("ratios %.4f, %.4f", r1, r2)};
}

Outcome minimality() {
  const Semigroup m3 = fixture("M3").model;
  const Projection r_o = diag_projection({1.0, 1.0, 0.0});
  const Matrix x = m3.heisenberg(r_o.matrix() - diag({0.0, 1.0, 0.0}), 30.0);
  const RealVector spec = hermitian_eig(0.5 * (x + x.adjoint())).values;
  double half = 1.0;
  for (Eigen::Index k = 0; k < spec.size(); ++k) half = std::min(half, std::abs(spec(k) - 0.5));

  int draws = 0;
  int violations = 0;
  for (const std::string& name : fixture_names()) {
    const Fixture f = fixture(name);
    AsymptoticOptions opts;
    opts.horizon = f.horizon;
    const RecurrentReport rep = recurrent_projection(f.model, opts);
    try {
      const MinimalityCertificate cert = minimality_certificate(f.model, rep.r_o, rep.decomposition, 200, opts);
      draws += cert.trials;
      violations += cert.violations;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TheoremViolation) throw;
      ++violations;
    }
  }
  return {half <= 1e-6 && violations == 0,
          fmt("|eig - 1/2| %.2e, ", half) + std::to_string(draws) + " draws, " + std::to_string(violations) +
              " violations"};
}

Outcome note_regression() {
  Rng rng(111);
  int candidates = 0;
  int misclassified = 0;
  auto probe = [&](const Semigroup& sg, const Projection& r_o) {
    AsymptoticOptions opts;
    opts.horizon = std::max(30.0, suggested_horizon(sg, 1e-12));
    const std::optional<Projection> p = search_limit_without_subharmonicity(sg, r_o, 100, opts);
    if (!p) return;
    ++candidates;
    const double limit = op_norm(sg.heisenberg(p->matrix(), opts.horizon) - identity(sg.dim()));
    const bool sub = is_subharmonic(sg, *p);
    bool report_sub = sub;
    if (const QuantumChannel* ch = sg.channel()) report_sub = subharmonic_report(*ch, *p).subharmonic;
    if (limit > 1e-8 || sub || report_sub) ++misclassified;
  };
  for (const std::string& name : fixture_names()) {
    const Fixture f = fixture(name);
    probe(f.model, recurrent_projection(f.model).r_o);
  }
  for (int trial = 0; trial < 40; ++trial) {
    const StructuredModel m = structured(rng, trial, trial % 2 == 1);
    probe(m.model, recurrent_projection(m.model).r_o);
  }
  return {misclassified == 0, std::to_string(candidates) + " near-limit candidates, " +
                                  std::to_string(misclassified) + " classified as sub-harmonic"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"four sub-harmonicity conditions agree on random channels", four_way},
      {"lattice closure of sub- and super-harmonic families", lattice},
      {"recurrent projection and decay ideal on fixtures", recurrent_fixtures},
      {"closed-form Heisenberg evolution", closed_form},
      {"minimal enclosure decompositions", enclosures},
      {"faithful stationary family gives the identity", faithful},
      {"support supremum equals recurrent projection", r_equals_r_o},
      {"supports of fixed points are super-harmonic", mohari},
      {"Cesaro mean convergence rate", cesaro_rate},
      {"minimality certificate", minimality},
      {"limit one does not imply sub-harmonic", note_regression},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
