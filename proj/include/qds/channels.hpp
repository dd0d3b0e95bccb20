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

// Kraus channels, GKS-Lindblad generators and their superoperators.
//
// Vectorisation is column stacking throughout: vec(A)[i + j*d] = A(i, j), so
// that vec(A B C) = (C^T kron A) vec(B).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qds/linalg.hpp"

namespace qds {

enum class Picture { Heisenberg, Schrodinger };

const char* to_string(Picture p);

/// Unital CP map a -> sum_i V_i^dagger a V_i. The Kraus family is kept exactly
/// as given (no normalisation, no reordering).
class QuantumChannel {
 public:
  /// Throws NotUnital if ||sum V_i^dagger V_i - 1|| > atol.
  explicit QuantumChannel(std::vector<Matrix> kraus, const Tolerances& tol = {});
  /// Skips the unitality check; dimensions are still validated.
  static QuantumChannel unchecked(std::vector<Matrix> kraus);

  int dim() const { return dim_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  double unitality_residual() const;

 private:
  QuantumChannel(std::vector<Matrix> kraus, bool check, const Tolerances& tol);

  int dim_ = 0;
  std::vector<Matrix> kraus_;
};

/// L(a) = i[H, a] + sum_i (L_i^dagger a L_i - 1/2 {L_i^dagger L_i, a}).
class LindbladGenerator {
 public:
  /// Throws NotHermitian if H is not Hermitian within atol. An empty list of
  /// Lindblad operators is allowed.
  LindbladGenerator(Matrix hamiltonian, std::vector<Matrix> lindblad_ops,
                    const Tolerances& tol = {});

  int dim() const { return static_cast<int>(hamiltonian_.rows()); }
  const Matrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<Matrix>& lindblad_ops() const { return lindblad_ops_; }

  /// G = -iH - 1/2 sum L_i^dagger L_i, so that L(a) = G^dagger a + a G + sum L_i^dagger a L_i.
  Matrix effective() const;

 private:
  Matrix hamiltonian_;
  std::vector<Matrix> lindblad_ops_;
};

/// d^2 x d^2 matrix acting on column-stacked operators, tagged with its picture.
struct Superoperator {
  int dim = 0;
  Matrix matrix;
  Picture picture = Picture::Heisenberg;

  Matrix apply(const Matrix& a) const;
  /// Hilbert-Schmidt adjoint; flips the picture.
  Superoperator adjoint() const;
  static Superoperator identity(int dim, Picture picture);
};

class DensityMatrix {
 public:
  /// Throws NotPSD or ValidationError (trace) when rho is not a state.
  explicit DensityMatrix(Matrix rho, const Tolerances& tol = {});
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }
  Projection support(const Tolerances& tol = {}) const { return support_projection(rho_, tol); }

 private:
  Matrix rho_;
};

/// V : C^d -> C^d kron C^n with alpha(a) = V^dagger (a kron 1_n) V.
struct StinespringDilation {
  Matrix isometry;  // (d*n) x d
  int multiplicity = 0;

  int dim() const { return static_cast<int>(isometry.cols()); }
  Matrix represent(const Matrix& a) const;  // a kron 1_n
  Matrix apply(const Matrix& a) const;      // V^dagger (a kron 1_n) V
};

Vector vec(const Matrix& a);
Matrix unvec(const Vector& v, int dim);
Matrix kron(const Matrix& a, const Matrix& b);

Matrix apply_heisenberg(const QuantumChannel& ch, const Matrix& a);
/// sum V_i rho V_i^dagger on an arbitrary operator.
Matrix apply_predual(const QuantumChannel& ch, const Matrix& rho);
DensityMatrix apply_schrodinger(const QuantumChannel& ch, const DensityMatrix& rho,
                                const Tolerances& tol = {});

Matrix lindblad_apply(const LindbladGenerator& gen, const Matrix& a, Picture picture);

Superoperator to_superoperator(const QuantumChannel& ch, Picture picture);
Superoperator to_superoperator(const LindbladGenerator& gen, Picture picture);

/// exp(t S_gen); throws NegativeTime for t < 0.
Superoperator evolve(const LindbladGenerator& gen, double t, Picture picture);
/// S^n by repeated squaring.
Superoperator power(const Superoperator& s, std::int64_t n);

/// Kraus family of a CP map given as a superoperator (either picture), from
/// the eigendecomposition of its Choi matrix. Throws NotPSD if the map is not
/// completely positive within psd_tol.
QuantumChannel channel_from_superoperator(const Superoperator& s, const Tolerances& tol = {});

/// Throws NotUnital when the Kraus family is not unital within atol.
StinespringDilation stinespring_dilate(const QuantumChannel& ch, const Tolerances& tol = {});
/// Max over matrix units of ||alpha(e) - V^dagger (e kron 1) V||.
double dilation_residual(const QuantumChannel& ch, const StinespringDilation& dil);

struct StructureReport {
  double unitality_residual = 0.0;         // ||alpha(1) - 1||
  double trace_preservation_residual = 0.0;  // max over matrix units |tr nu(e) - tr e|
  double hamiltonian_hermiticity = 0.0;      // generators only
  double duality_residual = 0.0;             // max |tr(nu(rho) a) - tr(rho alpha(a))|

  bool ok(const Tolerances& tol) const;
  std::vector<std::string> failures(const Tolerances& tol) const;
};

StructureReport check_structure(const QuantumChannel& ch, std::uint64_t seed = 7, int pairs = 16);
StructureReport check_structure(const LindbladGenerator& gen, std::uint64_t seed = 7,
                                int pairs = 16);

}  // namespace qds
