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

// Sub- and super-harmonic projections.
//
// A projection p is sub-harmonic for a unital positive map alpha when
// alpha(p) >= p, i.e. when the face of states supported by p is invariant
// under the predual. For a semigroup the property must hold for every alpha_t.
//
// None of the decision procedures here look at the long-time limit of
// alpha_t(p): a limit equal to 1 does not imply sub-harmonicity.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qds/semigroup.hpp"

namespace qds {

/// The four equivalent characterisations of sub-harmonicity for a single map.
struct HarmonicityReport {
  // (1) nu(F_p) subset F_p, sampled over `samples` random states of F_p.
  ConditionCheck face_invariance;
  int samples = 0;
  // (2) alpha(p) >= p; residual is max(0, -min eig(alpha(p) - p)).
  ConditionCheck order;
  double order_min_eigenvalue = 0.0;
  // (3) p alpha(a) p = p alpha(pap) p over all matrix units a.
  ConditionCheck compression;
  // (4) alpha(p'ap') = p' alpha(p'ap') p' over all matrix units a.
  ConditionCheck corner;
  /// Always condition (2).
  bool subharmonic = false;

  /// All decisive conditions agree.
  bool conditions_agree() const;
};

/// `alpha` is a Heisenberg-picture map. Condition (1) draws its states from
/// `seed`; the draws are evaluated concurrently but the result does not depend
/// on scheduling.
HarmonicityReport subharmonic_report(const Superoperator& alpha, const Projection& p,
                                     int trials = 32, const Tolerances& tol = {},
                                     std::uint64_t seed = 1);
HarmonicityReport subharmonic_report(const QuantumChannel& ch, const Projection& p,
                                     int trials = 32, const Tolerances& tol = {},
                                     std::uint64_t seed = 1);

/// max_i ||p' V_i p||.
double kraus_leak(const QuantumChannel& ch, const Projection& p);
bool kraus_invariance_test(const QuantumChannel& ch, const Projection& p,
                           const Tolerances& tol = {});

/// max(max_i ||p' L_i p||, ||p' G p||) with G = -iH - 1/2 sum L_i^dagger L_i.
double generator_leak(const LindbladGenerator& gen, const Projection& p);
bool is_subharmonic_generator(const LindbladGenerator& gen, const Projection& p,
                              const Tolerances& tol = {});

/// Exact algebraic test for either kind of semigroup.
double invariance_leak(const Semigroup& sg, const Projection& p);
bool is_subharmonic(const Semigroup& sg, const Projection& p, const Tolerances& tol = {});

/// Sub-harmonicity of the complement.
bool is_superharmonic(const Semigroup& sg, const Projection& p, const Tolerances& tol = {});
bool is_superharmonic(const QuantumChannel& ch, const Projection& p, const Tolerances& tol = {});
bool is_superharmonic(const LindbladGenerator& gen, const Projection& p,
                      const Tolerances& tol = {});

/// Direct order check alpha_t(p) >= p (sub) or alpha_t(p) <= p (super) at time t.
bool subharmonic_order_at(const Semigroup& sg, const Projection& p, double t,
                          const Tolerances& tol = {});
bool superharmonic_order_at(const Semigroup& sg, const Projection& p, double t,
                            const Tolerances& tol = {});

struct LatticeClosure {
  Projection inf;
  Projection sup;
  double inf_leak = 0.0;
  double sup_leak = 0.0;
  bool both = false;
};

/// Infimum and supremum of a sub-harmonic family and whether both are again
/// sub-harmonic. Throws FamilyNotSubharmonic if a member fails the test.
LatticeClosure subharmonic_closure(const Semigroup& sg, std::span<const Projection> family,
                                   const Tolerances& tol = {});
/// Same for super-harmonic families; leaks refer to the complements.
LatticeClosure superharmonic_closure(const Semigroup& sg, std::span<const Projection> family,
                                     const Tolerances& tol = {});

struct MohariResult {
  Projection support;
  bool superharmonic = false;
  /// max(0, -min eig(s - alpha(s))).
  double order_deficit = 0.0;
  /// ||(s kron 1) V s'|| from the Stinespring isometry; zero for a super-harmonic support.
  double dilation_residual = 0.0;
};

/// Support of a positive fixed point x of a unital CP map, with a check that
/// it is super-harmonic. Throws NotPSD, NotFixedPoint, or TheoremViolation
/// when the support fails the check (which signals numerical breakdown).
MohariResult mohari_support_check(const QuantumChannel& ch, const Matrix& x,
                                  const Tolerances& tol = {});

}  // namespace qds
