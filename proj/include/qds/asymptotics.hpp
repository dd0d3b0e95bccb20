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

// Long-time structure of a finite-dimensional CP semigroup.
//
// The recurrent projection r_o is the smallest projection above every minimal
// sub-harmonic projection (support of a minimal invariant face). In finite
// dimension alpha_t(r_o) increases to 1, the decay ideal
// J = {a : alpha_t(a^dagger a) -> 0} equals M r_o', and r_o is the smallest
// projection whose orbit tends to 1. Everything here certifies those facts
// numerically at a finite horizon.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qds/harmonic.hpp"
#include "qds/semigroup.hpp"

namespace qds {

struct AsymptoticOptions {
  double horizon = 30.0;     // time, or iteration count for channels
  double decay_tol = 1e-8;   // ||alpha_T(.)|| below this counts as decayed
  std::uint64_t seed = 1;
};

struct StationarySpace {
  int dim = 0;
  /// Hermitian, Hilbert-Schmidt orthonormal basis of the stationary operators.
  std::vector<Matrix> basis;
  /// Generating stationary states: the ergodic mean of the maximally mixed
  /// state first, then normalised positive and negative parts of the basis.
  std::vector<DensityMatrix> states;
};

StationarySpace stationary_space(const Semigroup& sg, const Tolerances& tol = {});

/// Hermitian HS-orthonormal basis of the fixed operators of the Heisenberg map.
std::vector<Matrix> fixed_point_basis(const Semigroup& sg, const Tolerances& tol = {});

/// Supremum of the supports of the generating stationary states.
Projection groh_r(const StationarySpace& space, const Tolerances& tol = {});

struct EnclosureDecomposition {
  std::vector<Projection> minimal_projections;
  /// The fixed-point algebra on the recurrent block is abelian.
  bool is_unique = true;
  int fixed_algebra_dim = 0;
  /// Redraws of the generic element that were needed.
  int retries = 0;
};

/// Orthogonal family of minimal sub-harmonic projections summing to r_o.
/// Non-abelian fixed-point algebras have many valid families; the one
/// returned is fixed by `seed`. Throws ConvergenceFailure when refinement
/// cannot find a generic splitting element in 8 draws.
EnclosureDecomposition minimal_enclosures(const Semigroup& sg, const Tolerances& tol = {},
                                          std::uint64_t seed = 1);

struct RecurrentReport {
  Projection r_o;
  Projection r;
  Matrix x_estimate;           // alpha_T(r_o)
  double sup_deviation = 0.0;  // ||alpha_T(r_o) - 1||
  double transient_norm = 0.0; // ||alpha_T(r_o')||
  double r_distance = 0.0;     // ||r - r_o||
  bool r_equals_ro = false;
  bool faithful_family = false;
  /// Rank of the support of x_estimate (expected: full).
  int x_support_rank = 0;
  EnclosureDecomposition decomposition;
  StationarySpace stationary;
};

/// Throws TheoremViolation if a faithful stationary family does not give r_o = 1.
RecurrentReport recurrent_projection(const Semigroup& sg, const AsymptoticOptions& opts = {},
                                     const Tolerances& tol = {});

struct DecayIdealTest {
  ConditionCheck algebraic;  // ||a r_o|| <= atol
  ConditionCheck dynamic;    // ||alpha_T(a^dagger a)|| <= decay_tol
  bool in_ideal_algebraic() const { return algebraic.holds; }
  bool in_ideal_dynamic() const { return dynamic.holds; }
  bool agree() const;
};

DecayIdealTest decay_ideal_test(const Semigroup& sg, const Matrix& a, const Projection& r_o,
                                const AsymptoticOptions& opts = {}, const Tolerances& tol = {});
/// Same test for each matrix unit, sharing one propagator.
std::vector<DecayIdealTest> decay_ideal_basis(const Semigroup& sg, const Projection& r_o,
                                              const AsymptoticOptions& opts = {},
                                              const Tolerances& tol = {});

/// ||alpha_T(a) - alpha_T(r_o a r_o)||.
double asymptotic_equivalence_check(const Semigroup& sg, const Matrix& a, const Projection& r_o,
                                    double horizon);
/// The same distance at each time in `times` (evaluated concurrently).
std::vector<double> asymptotic_equivalence_profile(const Semigroup& sg, const Matrix& a,
                                                   const Projection& r_o,
                                                   const std::vector<double>& times);

/// Trapezoidal (1/T) int_0^T nu_t(rho) dt on `grid_steps` intervals.
DensityMatrix cesaro_mean(const LindbladGenerator& gen, const DensityMatrix& rho, double horizon,
                          int grid_steps, const Tolerances& tol = {});
/// Continuous models use the trapezoidal rule; channels average nu^n over
/// n < llround(horizon) (grid_steps is ignored).
DensityMatrix cesaro_mean(const Semigroup& sg, const DensityMatrix& rho, double horizon,
                          int grid_steps, const Tolerances& tol = {});

struct EnclosureWitness {
  Projection dropped;          // q
  RealVector spectrum;         // eigenvalues of alpha_T(r_o - q), ascending
  double distance_from_one = 0.0;  // 1 - min eigenvalue
};

struct MinimalityCertificate {
  std::vector<EnclosureWitness> witnesses;
  int trials = 0;
  int near_limit = 0;   // draws with ||alpha_T(p) - 1|| <= decay_tol
  int violations = 0;   // of those, draws with p not >= r_o (decisively)
  double worst_deficit = 0.0;

  bool ok() const { return violations == 0; }
};

/// (a) each r_o - q has a limit bounded away from 1; (b) random projections
/// with alpha_T(p) ~ 1 all dominate r_o. Throws TheoremViolation when (b)
/// fails decisively.
MinimalityCertificate minimality_certificate(const Semigroup& sg, const Projection& r_o,
                                             const EnclosureDecomposition& decomposition,
                                             int trials, const AsymptoticOptions& opts = {},
                                             const Tolerances& tol = {});

/// Random search for a projection whose orbit tends to 1 but which is not
/// sub-harmonic. Best effort: returns nullopt when none is found.
std::optional<Projection> search_limit_without_subharmonicity(const Semigroup& sg,
                                                              const Projection& r_o, int trials,
                                                              const AsymptoticOptions& opts = {},
                                                              const Tolerances& tol = {});

/// Horizon at which every non-peripheral mode has decayed by `factor`.
double suggested_horizon(const Semigroup& sg, double factor = 1e-14, const Tolerances& tol = {});

}  // namespace qds
