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

// Named desk-scale models and seeded random model families.

#pragma once

#include <string>
#include <vector>

#include "qds/random.hpp"
#include "qds/semigroup.hpp"

namespace qds {

/// Zero generator on C^d.
LindbladGenerator identity_generator(int d);
/// Qubit decay, H = 0, L = sqrt(gamma) |0><1|.
LindbladGenerator amplitude_damping(double gamma);
/// Kraus channel V0 = diag(1, sqrt(1 - gamma)), V1 = sqrt(gamma) |0><1|.
QuantumChannel amplitude_damping_channel(double gamma);
/// Three levels, H = diag(0, 1, 0), L = |0><2| and |1><2|.
LindbladGenerator three_level_cascade();
/// three_level_cascade without the Hamiltonian.
LindbladGenerator decoherence_free_three_level();
/// Qubit with L = sqrt(gamma_down) |0><1| and sqrt(gamma_up) |1><0|.
LindbladGenerator thermal_qubit(double gamma_down, double gamma_up);

struct Fixture {
  std::string name;
  std::string label;
  Semigroup model;
  double horizon = 30.0;
};

/// ID2, ID3, AD, ADK, M3, DFS3, TH.
const std::vector<std::string>& fixture_names();
/// Throws ValidationError for an unknown name.
Fixture fixture(const std::string& name);

// ---------------------------------------------------------------------------

/// Haar isometry C^d -> C^d kron C^n sliced into n Kraus operators.
QuantumChannel random_channel(int d, int n_kraus, Rng& rng);

/// Block structure of a random model in its private frame: recurrent blocks
/// first, transient levels last. A decoherence-free block evolves trivially,
/// so every subspace of it is invariant.
struct BlockLayout {
  std::vector<int> blocks;
  std::vector<bool> decoherence_free;
  int transient = 0;

  int dim() const;
};

BlockLayout random_layout(int d, Rng& rng);

struct StructuredModel {
  Semigroup model;
  BlockLayout layout;
  Matrix frame;                     // unitary taking the block frame to the lab frame
  std::vector<Projection> blocks;   // invariant block projections in the lab frame
  Projection transient;
};

/// Unital channel whose blocks are invariant; transient columns leak anywhere.
/// Requires n_kraus >= 2 when the layout has transient levels.
StructuredModel random_structured_channel(const BlockLayout& layout, int n_kraus, Rng& rng);
/// GKS-Lindblad generator with the same invariance pattern.
StructuredModel random_structured_generator(const BlockLayout& layout, int n_ops, Rng& rng);

/// A random sub-harmonic projection of a structured model: a sum of blocks,
/// optionally with a random subspace of a decoherence-free block.
Projection random_invariant_projection(const StructuredModel& m, Rng& rng);

}  // namespace qds
