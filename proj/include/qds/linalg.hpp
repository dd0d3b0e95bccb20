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

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qds/error.hpp"

namespace qds {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Numerical thresholds shared by every decision procedure.
///
/// `atol` bounds residual norms, `rank_rtol` is the relative singular-value
/// cutoff used for rank and support decisions, and `psd_tol` is the slack
/// allowed below zero for the smallest eigenvalue of a positive matrix.
struct Tolerances {
  double atol = 1e-9;
  double rank_rtol = 1e-8;
  double psd_tol = 1e-9;

  /// Throws ValidationError unless every field lies in (0, 1e-2).
  void validate() const;
};

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

Matrix identity(int dim);
Matrix zero(int dim);
/// |i><j| on C^dim.
Matrix matrix_unit(int dim, int i, int j);
/// |u><v|.
Matrix outer(const Vector& u, const Vector& v);
Matrix diag(std::initializer_list<Complex> entries);

/// Largest singular value.
double op_norm(const Matrix& a);
/// Sum of singular values.
double trace_norm(const Matrix& a);
/// op_norm(a^dagger - a).
double hermiticity_residual(const Matrix& a);
bool all_finite(const Matrix& a);

void require_square(const Matrix& a, const char* what);
void require_same_dim(const Matrix& a, const Matrix& b, const char* what);

// ---------------------------------------------------------------------------
// Spectral calculus
// ---------------------------------------------------------------------------

struct HermitianEig {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns, phase fixed
};

/// Eigendecomposition of a Hermitian matrix. Each eigenvector has its
/// largest-magnitude component made real and positive.
HermitianEig hermitian_eig(const Matrix& a, const Tolerances& tol = {});

/// exp(a) by scaling and squaring around a truncated Taylor core.
Matrix matrix_exp(const Matrix& a);

/// exp(a) for Hermitian a via the spectral decomposition.
Matrix matrix_exp_hermitian(const Matrix& a, const Tolerances& tol = {});

double min_eigenvalue(const Matrix& a, const Tolerances& tol = {});
bool is_psd(const Matrix& a, const Tolerances& tol = {});
/// a <= b in the operator order.
bool order_leq(const Matrix& a, const Matrix& b, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Projections
// ---------------------------------------------------------------------------

class Projection {
 public:
  /// Projection onto the span of orthonormal columns; throws ValidationError
  /// if the columns are not orthonormal within atol.
  static Projection from_basis(const Matrix& basis, int dim, const Tolerances& tol = {});
  /// Projection onto the column span of arbitrary vectors (rank by relative SVD cutoff).
  static Projection onto_span(const Matrix& vectors, int dim, const Tolerances& tol = {});
  /// Validates idempotence and self-adjointness of `p` and extracts its range.
  static Projection from_matrix(const Matrix& p, const Tolerances& tol = {});
  static Projection zero(int dim);
  static Projection identity(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  int rank() const { return static_cast<int>(basis_.cols()); }
  const Matrix& matrix() const { return matrix_; }
  /// dim x rank, orthonormal columns.
  const Matrix& basis() const { return basis_; }

  Projection complement() const;

 private:
  Projection(Matrix basis, int dim);

  Matrix matrix_;
  Matrix basis_;
};

/// op_norm(p - q).
double distance(const Projection& p, const Projection& q);

/// Smallest projection p with x p = x, for positive x. Eigenvalues at or
/// below max(rank_rtol * lambda_max, atol) are treated as zero.
Projection support_projection(const Matrix& x, const Tolerances& tol = {});

/// Projection onto the intersection of the ranges.
Projection proj_infimum(std::span<const Projection> family, const Tolerances& tol = {});
/// Projection onto the span of the union of the ranges.
Projection proj_supremum(std::span<const Projection> family, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Decisions with an indeterminate band
// ---------------------------------------------------------------------------

enum class Decision { Holds, Fails, Indeterminate };

/// Holds when residual <= threshold, Fails when residual > 10 * threshold.
Decision decide(double residual, double threshold);
const char* to_string(Decision d);

struct ConditionCheck {
  double residual = 0.0;
  bool holds = false;
  Decision decision = Decision::Holds;
};

ConditionCheck make_check(double residual, double threshold);

/// True iff every decisive check in `checks` agrees. Indeterminate entries are
/// ignored.
bool decisive_agreement(std::span<const ConditionCheck> checks);

/// Equivalent characterisations of x >= p (case a) and p >= x (case b)
/// for 0 <= x <= 1 and a projection p.
struct OrderDiagnostic {
  // (1) x >= p, (2) pxp = p, (3) x = p + p'xp', (4) xp = p, (5) px = p
  std::array<ConditionCheck, 5> case_a;
  // (1) p >= x, (2) pxp = x, (3) x = xp, (4) x = px
  std::array<ConditionCheck, 4> case_b;

  bool case_a_agrees() const { return decisive_agreement(case_a); }
  bool case_b_agrees() const { return decisive_agreement(case_b); }
};

OrderDiagnostic order_diagnostic(const Matrix& x, const Projection& p,
                                    const Tolerances& tol = {});

}  // namespace qds
