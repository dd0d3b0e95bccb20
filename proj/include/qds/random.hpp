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

#pragma once

#include <cstdint>
#include <random>

#include "qds/linalg.hpp"

namespace qds {

/// Derives an independent stream seed for sub-task `index` of a run seeded
/// with `seed` (splitmix64 finaliser).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Seeded source for every random object in the library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  int uniform_int(int lo, int hi);  // inclusive
  double normal();
  std::uint64_t next_seed() { return engine_(); }

  /// i.i.d. complex Gaussian entries.
  Matrix gaussian(int rows, int cols);
  /// Haar-distributed isometry C^cols -> C^rows (rows >= cols).
  Matrix isometry(int rows, int cols);
  Matrix unitary(int dim) { return isometry(dim, dim); }
  Matrix hermitian(int dim);
  /// Hermitian with spectrum drawn uniformly from [0, 1].
  Matrix unit_interval_hermitian(int dim);
  /// Full-rank density matrix (normalised Wishart).
  Matrix density(int dim);
  /// Uniform orientation, fixed rank.
  Projection projection(int dim, int rank);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qds
