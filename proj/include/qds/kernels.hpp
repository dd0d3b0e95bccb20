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

// Data-parallel kernels. Every kernel takes an execution policy; the serial
// path is the reference the OpenMP path is tested against, and both produce
// bit-identical results (each output slot is written by exactly one
// iteration, with the same arithmetic on either path).

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qds/linalg.hpp"

namespace qds::kernels {

enum class Exec { Serial, Parallel };

using Action = std::function<Matrix(const Matrix&)>;

/// Superoperator matrix of a linear map on d x d matrices: column i + j*d is
/// vec(action(|i><j|)). `action` must be safe to call concurrently.
Matrix assemble(int dim, const Action& action, Exec exec = Exec::Parallel);

/// Kronecker product a kron b.
Matrix kron(const Matrix& a, const Matrix& b, Exec exec = Exec::Parallel);

/// exp(t * s) for each t in `times`.
std::vector<Matrix> exp_batch(const Matrix& s, std::span<const double> times,
                              Exec exec = Exec::Parallel);

/// Runs body(i) for i in [0, n). Parallel iterations must write disjoint state.
void for_each_index(int n, const std::function<void(int)>& body, Exec exec = Exec::Parallel);

int max_threads();

}  // namespace qds::kernels
