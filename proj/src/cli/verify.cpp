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
#include <cstdio>
#include <functional>
#include <sstream>

#include "qds/cli.hpp"
#include "qds/harmonic.hpp"
#include "qds/kernels.hpp"

namespace qds::cli {

namespace {

constexpr double kDecayTol = 1e-8;
constexpr double kMinGap = 0.05;

enum class Outcome { Pass, Fail, Skip };

struct TrialResult {
  Outcome outcome = Outcome::Pass;
  double residual = 0.0;
  std::string error;
};

TrialResult verdict(bool ok, double residual) { return {ok ? Outcome::Pass : Outcome::Fail, residual, {}}; }

int dim_for(const VerifyOptions& opts, int k) { return opts.dims[k % opts.dims.size()]; }

/// Structured model with a usable spectral gap; redraws a bounded number of times.
StructuredModel draw_model(Rng& rng, int d, bool channel) {
  for (int attempt = 0;; ++attempt) {
    const BlockLayout layout = random_layout(d, rng);
    StructuredModel m =
        channel ? random_structured_channel(layout, rng.uniform_int(layout.transient > 0 ? 2 : 1, 3), rng)
                : random_structured_generator(layout, rng.uniform_int(1, 3), rng);
    if (attempt >= 16 || m.model.spectral_gap() >= kMinGap) return m;
  }
}

Projection block_sum(const StructuredModel& m) {
  if (m.blocks.empty()) return Projection::zero(m.layout.dim());
  return proj_supremum(m.blocks);
}

// ---------------------------------------------------------------------------
// Individual properties. Each draws everything from its own Rng.

TrialResult four_way(Rng& rng, int d) {
  QuantumChannel ch = QuantumChannel::unchecked({identity(d)});
  Projection p = Projection::zero(d);
  if (rng.uniform() < 0.5) {
    ch = random_channel(d, rng.uniform_int(1, 4), rng);
    p = rng.projection(d, rng.uniform_int(0, d));
  } else {
    StructuredModel m = draw_model(rng, d, true);
    ch = *m.model.channel();
    p = rng.uniform() < 0.7 ? random_invariant_projection(m, rng) : rng.projection(d, rng.uniform_int(0, d));
  }
  const HarmonicityReport rep = subharmonic_report(ch, p, 32, {}, rng.next_seed());
  const double leak = kraus_leak(ch, p);
  const Decision kraus = decide(leak, Tolerances{}.atol);
  bool ok = rep.conditions_agree();
  if (kraus != Decision::Indeterminate && rep.order.decision != Decision::Indeterminate) {
    ok = ok && ((kraus == Decision::Holds) == rep.subharmonic);
  }
  const double worst = rep.subharmonic ? std::max({rep.order.residual, rep.compression.residual,
                                                   rep.corner.residual, rep.face_invariance.residual})
                                       : 0.0;
  return verdict(ok, worst);
}

TrialResult complement_duality(Rng& rng, int d, bool channel) {
  const StructuredModel m = draw_model(rng, d, channel);
  const Projection p =
      rng.uniform() < 0.5 ? random_invariant_projection(m, rng) : rng.projection(d, rng.uniform_int(0, d));
  const double leak = invariance_leak(m.model, p);
  const Decision sub = decide(leak, Tolerances{}.atol);
  if (sub == Decision::Indeterminate) return {Outcome::Skip, leak, {}};
  // Super-harmonicity of the complement, by the order relation at a fixed time.
  const bool super = superharmonic_order_at(m.model, p.complement(), 1.0);
  return verdict((sub == Decision::Holds) == super, sub == Decision::Holds ? leak : 0.0);
}

TrialResult lattice(Rng& rng, int d, bool channel, bool super) {
  const StructuredModel m = draw_model(rng, d, channel);
  std::vector<Projection> family;
  const int size = rng.uniform_int(2, 4);
  for (int k = 0; k < size; ++k) {
    const Projection q = random_invariant_projection(m, rng);
    family.push_back(super ? q.complement() : q);
  }
  const LatticeClosure c = super ? superharmonic_closure(m.model, family) : subharmonic_closure(m.model, family);
  const double worst = std::max(c.inf_leak, c.sup_leak);
  return verdict(c.both && worst <= 1e-8, worst);
}

TrialResult monotone_orbit(Rng& rng, int d, bool channel) {
  const StructuredModel m = draw_model(rng, d, channel);
  const Projection p = random_invariant_projection(m, rng);
  const std::vector<double> grid = channel ? std::vector<double>{0, 1, 2, 3, 5, 8}
                                           : std::vector<double>{0, 0.25, 0.5, 1, 2, 4};
  Matrix prev = p.matrix();
  double worst = 0.0;
  bool ok = true;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const Matrix next = m.model.heisenberg(p.matrix(), grid[k]);
    const Matrix diff = 0.5 * ((next - prev) + (next - prev).adjoint());
    const double deficit = std::max(0.0, -min_eigenvalue(diff));
    worst = std::max(worst, deficit);
    ok = ok && deficit <= Tolerances{}.atol;
    prev = next;
  }
  return verdict(ok, worst);
}

TrialResult order_criterion(Rng& rng, int d) {
  const Projection p = rng.projection(d, rng.uniform_int(0, d));
  const Matrix y = rng.unit_interval_hermitian(d);
  const Matrix pm = p.matrix();
  const Matrix pc = identity(d) - pm;
  Matrix x;
  switch (rng.uniform_int(0, 2)) {
    case 0: x = pm + pc * y * pc; break;
    case 1: x = pm * y * pm; break;
    default: x = y; break;
  }
  const OrderDiagnostic diag = order_diagnostic(0.5 * (x + x.adjoint()), p);
  return verdict(diag.case_a_agrees() && diag.case_b_agrees(), 0.0);
}

TrialResult mohari(Rng& rng, int d) {
  const StructuredModel m = draw_model(rng, d, true);
  const QuantumChannel& ch = *m.model.channel();
  const Superoperator e = m.model.ergodic_projection(Picture::Heisenberg);
  Matrix x = e.apply(rng.density(d));
  x = 0.5 * (x + x.adjoint());
  const MohariResult r = mohari_support_check(ch, x);
  const double recon = dilation_residual(ch, stinespring_dilate(ch));
  const double worst = std::max({r.order_deficit, r.dilation_residual, recon});
  return verdict(r.superharmonic && r.order_deficit <= 1e-8 && recon <= 1e-12 && r.dilation_residual <= 1e-8,
                 worst);
}

// The recurrent-structure properties share one model per trial.
struct RecurrentTrial {
  TrialResult recurrent;     // r_o equals the planted recurrent blocks, alpha_T(r_o) ~ 1
  TrialResult r_equals_ro;   // Groh's r against r_o
  TrialResult limit_support; // s[alpha_T(r_o)] = 1
  TrialResult enclosures;    // count and uniqueness match the planted layout
  TrialResult decay_ideal;   // algebraic and dynamic membership agree, left ideal
  TrialResult minimality;    // no projection with limit 1 below r_o
  TrialResult note;          // near-limit candidates are still rejected as non-sub-harmonic
  bool note_found = false;
};

RecurrentTrial recurrent_trial(Rng& rng, int d, bool channel) {
  const StructuredModel m = draw_model(rng, d, channel);
  const Semigroup& sg = m.model;
  const Tolerances tol;
  const AsymptoticOptions ao{suggested_horizon(sg), kDecayTol, rng.next_seed()};
  const RecurrentReport rep = recurrent_projection(sg, ao, tol);
  RecurrentTrial out;

  const double planted = distance(rep.r_o, block_sum(m));
  out.recurrent = verdict(planted <= 1e-8 && rep.sup_deviation <= kDecayTol && rep.transient_norm <= kDecayTol,
                          std::max({planted, rep.sup_deviation, rep.transient_norm}));
  out.r_equals_ro = verdict(rep.r_equals_ro, rep.r_distance);
  out.limit_support = verdict(rep.x_support_rank == d, d - rep.x_support_rank);

  // A single Kraus operator acts on each block as a unitary, whose generic
  // spectrum splits the block into rank-one enclosures.
  const bool unitary_blocks = channel && sg.channel()->kraus().size() == 1;
  int expected = 0;
  bool unique = true;
  for (std::size_t j = 0; j < m.layout.blocks.size(); ++j) {
    expected += m.layout.decoherence_free[j] || unitary_blocks ? m.layout.blocks[j] : 1;
    if (m.layout.decoherence_free[j] && m.layout.blocks[j] >= 2) unique = false;
  }
  const int found = static_cast<int>(rep.decomposition.minimal_projections.size());
  out.enclosures = verdict(found == expected && rep.decomposition.is_unique == unique, std::abs(found - expected));

  bool agree = true;
  for (const DecayIdealTest& t : decay_ideal_basis(sg, rep.r_o, ao, tol)) agree = agree && t.agree();
  double ideal_worst = 0.0;
  const Projection z = rep.r_o.complement();
  if (z.rank() > 0) {
    const Matrix a = rng.gaussian(d, 1) * z.basis().col(rng.uniform_int(0, z.rank() - 1)).adjoint();
    const Matrix c = rng.gaussian(d, d);
    const Matrix ca = c * a;
    const DecayIdealTest t = decay_ideal_test(sg, ca, rep.r_o, ao, tol);
    const double scale = std::max(1.0, op_norm(ca) * op_norm(ca));
    ideal_worst = t.dynamic.residual / scale;
    agree = agree && t.algebraic.holds && ideal_worst <= kDecayTol;
  }
  out.decay_ideal = verdict(agree, ideal_worst);

  const MinimalityCertificate cert = minimality_certificate(sg, rep.r_o, rep.decomposition, 30, ao, tol);
  bool witnesses = true;
  for (const EnclosureWitness& w : cert.witnesses) witnesses = witnesses && w.distance_from_one > kDecayTol;
  out.minimality = verdict(cert.ok() && witnesses, cert.worst_deficit);

  const std::optional<Projection> candidate = search_limit_without_subharmonicity(sg, rep.r_o, 8, ao, tol);
  out.note_found = candidate.has_value();
  out.note = verdict(!candidate || !is_subharmonic(sg, *candidate, tol), 0.0);
  return out;
}

// ---------------------------------------------------------------------------

std::string format_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void tally(PropertyResult& p, const TrialResult& r) {
  ++p.trials;
  switch (r.outcome) {
    case Outcome::Pass: ++p.passed; break;
    case Outcome::Skip: ++p.skipped; break;
    case Outcome::Fail:
      if (p.detail.empty()) p.detail = r.error.empty() ? "first failure at trial " + std::to_string(p.trials - 1) : r.error;
      break;
  }
  if (r.outcome != Outcome::Skip) p.worst = std::max(p.worst, r.residual);
}

TrialResult guarded(const std::function<TrialResult()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    return {Outcome::Fail, 0.0, e.what()};
  }
}

PropertyResult run_property(const std::string& name, std::uint64_t seed, int trials,
                            const std::function<TrialResult(Rng&, int)>& body) {
  std::vector<TrialResult> results(trials);
  kernels::for_each_index(trials, [&](int k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    results[k] = guarded([&] { return body(rng, k); });
  });
  PropertyResult p;
  p.name = name;
  for (const TrialResult& r : results) tally(p, r);
  return p;
}

}  // namespace

bool VerifySummary::pass() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.ok(); });
}

std::string VerifySummary::text() const {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-28s %7s %7s %7s  %-10s %s\n", "property", "passed", "skipped", "trials",
                "worst", "status");
  os << line;
  for (const PropertyResult& p : properties) {
    std::snprintf(line, sizeof line, "%-28s %7d %7d %7d  %-10s %s\n", p.name.c_str(), p.passed, p.skipped,
                  p.trials, format_residual(p.worst).c_str(), p.ok() ? "pass" : "FAIL");
    os << line;
    if (!p.detail.empty()) os << "    " << p.detail << "\n";
  }
  os << "result: " << (pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

VerifySummary run_verify(const VerifyOptions& opts) {
  if (opts.trials < 1) throw Error(ErrorKind::Usage, "--trials must be at least 1");
  if (opts.dims.empty()) throw Error(ErrorKind::Usage, "--dims must not be empty");
  for (int d : opts.dims) {
    if (d < 1 || d > 8) throw Error(ErrorKind::Usage, "--dims entries must lie in [1, 8]");
  }
  const int n = opts.trials;
  const auto seed_for = [&](std::uint64_t group) { return derive_seed(opts.seed, group); };

  VerifySummary out;
  auto& props = out.properties;
  props.push_back(run_property("four_way_agreement", seed_for(1), 2 * n,
                               [&](Rng& r, int k) { return four_way(r, dim_for(opts, k)); }));
  props.push_back(run_property("complement_duality", seed_for(2), n, [&](Rng& r, int k) {
    return complement_duality(r, dim_for(opts, k), k % 2 == 0);
  }));
  props.push_back(run_property("lattice_closure_sub", seed_for(3), n, [&](Rng& r, int k) {
    return lattice(r, dim_for(opts, k), k % 2 == 0, false);
  }));
  props.push_back(run_property("lattice_closure_super", seed_for(4), n, [&](Rng& r, int k) {
    return lattice(r, dim_for(opts, k), k % 2 == 0, true);
  }));
  props.push_back(run_property("monotone_orbit", seed_for(5), n, [&](Rng& r, int k) {
    return monotone_orbit(r, dim_for(opts, k), k % 2 == 0);
  }));
  props.push_back(run_property("order_criterion", seed_for(6), n,
                               [&](Rng& r, int k) { return order_criterion(r, dim_for(opts, k)); }));
  props.push_back(run_property("mohari_support", seed_for(7), n,
                               [&](Rng& r, int k) { return mohari(r, dim_for(opts, k)); }));

  std::vector<RecurrentTrial> trials(n);
  std::vector<std::string> errors(n);
  kernels::for_each_index(n, [&](int k) {
    Rng rng(derive_seed(seed_for(8), static_cast<std::uint64_t>(k)));
    try {
      trials[k] = recurrent_trial(rng, dim_for(opts, k), k % 2 == 0);
    } catch (const Error& e) {
      errors[k] = e.what();
    }
  });
  const std::vector<std::pair<std::string, TrialResult RecurrentTrial::*>> fields{
      {"recurrent_projection", &RecurrentTrial::recurrent},
      {"groh_r_equals_r_o", &RecurrentTrial::r_equals_ro},
      {"limit_support_full", &RecurrentTrial::limit_support},
      {"minimal_enclosures", &RecurrentTrial::enclosures},
      {"decay_ideal", &RecurrentTrial::decay_ideal},
      {"minimality_certificate", &RecurrentTrial::minimality},
      {"note_regression", &RecurrentTrial::note}};
  for (const auto& [name, field] : fields) {
    PropertyResult p;
  p.name = name;
    for (int k = 0; k < n; ++k) {
      tally(p, errors[k].empty() ? trials[k].*field : TrialResult{Outcome::Fail, 0.0, errors[k]});
    }
    if (field == &RecurrentTrial::note) {
      const auto found = std::count_if(trials.begin(), trials.end(), [](const RecurrentTrial& t) { return t.note_found; });
      if (p.detail.empty()) p.detail = "near-limit non-sub-harmonic candidates found: " + std::to_string(found);
    }
    props.push_back(std::move(p));
  }
  return out;
}

}  // namespace qds::cli
