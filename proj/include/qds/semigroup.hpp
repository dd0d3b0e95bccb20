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
#include <variant>

#include "qds/channels.hpp"

namespace qds {

/// A dynamical semigroup given either by a Kraus channel (discrete time,
/// alpha_n = alpha^n) or by a GKS-Lindblad generator (alpha_t = exp(tL)).
/// For a channel, a time argument t is rounded to the iteration count
/// llround(t).
class Semigroup {
 public:
  explicit Semigroup(QuantumChannel channel);
  explicit Semigroup(LindbladGenerator generator);

  bool is_discrete() const { return std::holds_alternative<QuantumChannel>(model_); }
  int dim() const { return heisenberg_.dim; }
  const QuantumChannel* channel() const { return std::get_if<QuantumChannel>(&model_); }
  const LindbladGenerator* generator() const { return std::get_if<LindbladGenerator>(&model_); }

  /// The one-step map of a channel, or the generator of a continuous semigroup.
  const Superoperator& base(Picture picture) const {
    return picture == Picture::Heisenberg ? heisenberg_ : schrodinger_;
  }

  std::int64_t steps(double t) const;
  /// alpha_t (Heisenberg) or nu_t (Schrodinger) as a superoperator.
  Superoperator propagator(double t, Picture picture) const;
  Matrix heisenberg(const Matrix& a, double t) const;
  Matrix schrodinger(const Matrix& rho, double t) const;

  /// Limit of the Cesaro means: the spectral projection onto the stationary
  /// (Schrodinger) or fixed (Heisenberg) space along the remaining spectrum.
  Superoperator ergodic_projection(Picture picture, const Tolerances& tol = {}) const;

  /// Slowest decay rate among non-peripheral modes (per unit time, or per
  /// iteration as -log|lambda| for channels). Infinity if every mode is peripheral.
  double spectral_gap(const Tolerances& tol = {}) const;

  /// Compression to the range of an invariant projection: the model with
  /// operators B^dagger X B, where B is the range basis of p. Only meaningful
  /// when p is sub-harmonic; callers are responsible for checking that.
  Semigroup restrict(const Projection& p) const;

 private:
  std::variant<QuantumChannel, LindbladGenerator> model_;
  Superoperator heisenberg_;
  Superoperator schrodinger_;
};

}  // namespace qds
