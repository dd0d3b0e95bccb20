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

#include "qds/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qds {

void Tolerances::validate() const {
  for (double v : {atol, rank_rtol, psd_tol}) {
    if (!(v > 0.0 && v < 1e-2)) {
      throw Error(ErrorKind::ValidationError,
                  "tolerances must lie in (0, 1e-2), got " + std::to_string(v));
    }
  }
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix zero(int dim) { return Matrix::Zero(dim, dim); }

Matrix matrix_unit(int dim, int i, int j) {
  Matrix e = Matrix::Zero(dim, dim);
  e(i, j) = 1.0;
  return e;
}

Matrix outer(const Vector& u, const Vector& v) { return u * v.adjoint(); }

Matrix diag(std::initializer_list<Complex> entries) {
  const int n = static_cast<int>(entries.size());
  Matrix m = Matrix::Zero(n, n);
  int k = 0;
  for (const Complex& z : entries) {
    m(k, k) = z;
    ++k;
  }
  return m;
}

double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double trace_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

double hermiticity_residual(const Matrix& a) { return op_norm(a.adjoint() - a); }

bool all_finite(const Matrix& a) { return a.allFinite(); }

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw Error(ErrorKind::DimMismatch, std::string(what) + " must be square and non-empty");
  }
  if (!a.allFinite()) {
    throw Error(ErrorKind::ValidationError, std::string(what) + " has non-finite entries");
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

namespace {

void require_hermitian(const Matrix& a, const Tolerances& tol) {
  require_square(a, "matrix");
  const double res = hermiticity_residual(a);
  if (res > tol.atol) {
    throw Error(ErrorKind::NotHermitian, "hermiticity residual " + std::to_string(res));
  }
}

void fix_phase(Eigen::Ref<Vector> v) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double mag = std::abs(v(k));
    if (mag > best_mag + 1e-12) {
      best_mag = mag;
      best = k;
    }
  }
  if (best_mag > 0.0) v *= std::conj(v(best)) / best_mag;
}

}  // namespace

HermitianEig hermitian_eig(const Matrix& a, const Tolerances& tol) {
  require_hermitian(a, tol);
  const Matrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InternalError, "Hermitian eigensolver did not converge");
  }
  HermitianEig out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) fix_phase(out.vectors.col(k));
  return out;
}

Matrix matrix_exp(const Matrix& a) {
  require_square(a, "exponent");
  const int n = static_cast<int>(a.rows());
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();

  // Scale so that the Taylor core acts on a matrix of 1-norm at most 1/2.
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const Matrix scaled = a / std::ldexp(1.0, squarings);

  // 0.5^19 / 19! < 1e-22, well below double rounding.
  constexpr int kOrder = 18;
  Matrix result = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k <= kOrder; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

Matrix matrix_exp_hermitian(const Matrix& a, const Tolerances& tol) {
  const HermitianEig eig = hermitian_eig(a, tol);
  const RealVector ev = eig.values.array().exp();
  return eig.vectors * ev.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

double min_eigenvalue(const Matrix& a, const Tolerances& tol) {
  return hermitian_eig(a, tol).values(0);
}

bool is_psd(const Matrix& a, const Tolerances& tol) {
  return min_eigenvalue(a, tol) >= -tol.psd_tol;
}

bool order_leq(const Matrix& a, const Matrix& b, const Tolerances& tol) {
  require_same_dim(a, b, "order_leq");
  require_hermitian(a, tol);
  require_hermitian(b, tol);
  return is_psd(b - a, tol);
}

// ---------------------------------------------------------------------------

Projection::Projection(Matrix basis, int dim) : basis_(std::move(basis)) {
  if (basis_.cols() == 0) {
    basis_.resize(dim, 0);
    matrix_ = Matrix::Zero(dim, dim);
  } else {
    matrix_ = basis_ * basis_.adjoint();
  }
}

Projection Projection::from_basis(const Matrix& basis, int dim, const Tolerances& tol) {
  if (basis.rows() != dim && basis.cols() != 0) {
    throw Error(ErrorKind::DimMismatch, "basis rows differ from dimension");
  }
  if (basis.cols() > dim) throw Error(ErrorKind::ValidationError, "basis has too many columns");
  if (basis.cols() > 0) {
    const Matrix gram = basis.adjoint() * basis;
    const double res = op_norm(gram - Matrix::Identity(gram.rows(), gram.cols()));
    if (res > tol.atol) {
      throw Error(ErrorKind::ValidationError,
                  "basis is not orthonormal (residual " + std::to_string(res) + ")");
    }
  }
  return Projection(basis, dim);
}

Projection Projection::onto_span(const Matrix& vectors, int dim, const Tolerances& tol) {
  if (vectors.cols() == 0) return zero(dim);
  if (vectors.rows() != dim) throw Error(ErrorKind::DimMismatch, "vectors rows differ from dimension");
  Eigen::JacobiSVD<Matrix> svd(vectors, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  const double cutoff = std::max(tol.rank_rtol * s(0), tol.atol);
  int rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return Projection(svd.matrixU().leftCols(rank), dim);
}

Projection Projection::from_matrix(const Matrix& p, const Tolerances& tol) {
  require_square(p, "projection");
  const double herm = hermiticity_residual(p);
  const double idem = op_norm(p * p - p);
  if (herm > tol.atol || idem > tol.atol) {
    throw Error(ErrorKind::ValidationError,
                "not a projection (hermiticity " + std::to_string(herm) + ", idempotence " +
                    std::to_string(idem) + ")");
  }
  const HermitianEig eig = hermitian_eig(p, tol);
  const int dim = static_cast<int>(p.rows());
  int first = 0;
  while (first < dim && eig.values(first) < 0.5) ++first;
  return Projection(eig.vectors.rightCols(dim - first), dim);
}

Projection Projection::zero(int dim) { return Projection(Matrix(dim, 0), dim); }

Projection Projection::identity(int dim) { return Projection(Matrix::Identity(dim, dim), dim); }

Projection Projection::complement() const {
  const int d = dim();
  const int r = rank();
  if (r == 0) return identity(d);
  if (r == d) return zero(d);
  Eigen::HouseholderQR<Matrix> qr(basis_);
  const Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  return Projection(q.rightCols(d - r), d);
}

double distance(const Projection& p, const Projection& q) {
  require_same_dim(p.matrix(), q.matrix(), "projection distance");
  return op_norm(p.matrix() - q.matrix());
}

Projection support_projection(const Matrix& x, const Tolerances& tol) {
  const HermitianEig eig = hermitian_eig(x, tol);
  if (eig.values(0) < -tol.psd_tol) {
    throw Error(ErrorKind::NotPSD, "minimum eigenvalue " + std::to_string(eig.values(0)));
  }
  const int dim = static_cast<int>(x.rows());
  const double lmax = eig.values(dim - 1);
  const double cutoff = std::max(tol.rank_rtol * lmax, tol.atol);
  int first = 0;
  while (first < dim && eig.values(first) <= cutoff) ++first;
  return Projection::from_basis(eig.vectors.rightCols(dim - first), dim, tol);
}

namespace {

int common_dim(std::span<const Projection> family) {
  if (family.empty()) throw Error(ErrorKind::ValidationError, "projection family is empty");
  const int d = family.front().dim();
  for (const Projection& p : family) {
    if (p.dim() != d) throw Error(ErrorKind::DimMismatch, "projection family dimensions differ");
  }
  return d;
}

}  // namespace

Projection proj_infimum(std::span<const Projection> family, const Tolerances& tol) {
  const int d = common_dim(family);
  if (family.size() == 1) return family.front();
  Matrix sum = Matrix::Zero(d, d);
  for (const Projection& p : family) sum += p.matrix();
  const HermitianEig eig = hermitian_eig(sum, tol);
  const double n = static_cast<double>(family.size());
  // Vectors in every range sit at eigenvalue n; anything else is strictly below.
  const double cutoff = n - std::max(tol.rank_rtol * n, tol.atol);
  int first = 0;
  while (first < d && eig.values(first) < cutoff) ++first;
  return Projection::from_basis(eig.vectors.rightCols(d - first), d, tol);
}

Projection proj_supremum(std::span<const Projection> family, const Tolerances& tol) {
  common_dim(family);
  if (family.size() == 1) return family.front();
  std::vector<Projection> complements;
  complements.reserve(family.size());
  for (const Projection& p : family) complements.push_back(p.complement());
  return proj_infimum(complements, tol).complement();
}

// ---------------------------------------------------------------------------

Decision decide(double residual, double threshold) {
  if (residual <= threshold) return Decision::Holds;
  if (residual > 10.0 * threshold) return Decision::Fails;
  return Decision::Indeterminate;
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::Holds: return "holds";
    case Decision::Fails: return "fails";
    case Decision::Indeterminate: return "indeterminate";
  }
  return "?";
}

ConditionCheck make_check(double residual, double threshold) {
  return ConditionCheck{residual, residual <= threshold, decide(residual, threshold)};
}

bool decisive_agreement(std::span<const ConditionCheck> checks) {
  bool seen = false;
  Decision first = Decision::Indeterminate;
  for (const ConditionCheck& c : checks) {
    if (c.decision == Decision::Indeterminate) continue;
    if (!seen) {
      first = c.decision;
      seen = true;
    } else if (c.decision != first) {
      return false;
    }
  }
  return true;
}

namespace {

double order_deficit(const Matrix& lower, const Matrix& upper, const Tolerances& tol) {
  return std::max(0.0, -min_eigenvalue(upper - lower, tol));
}

}  // namespace

OrderDiagnostic order_diagnostic(const Matrix& x, const Projection& p, const Tolerances& tol) {
  require_same_dim(x, p.matrix(), "order_diagnostic");
  const HermitianEig eig = hermitian_eig(x, tol);
  const int d = static_cast<int>(x.rows());
  if (eig.values(0) < -tol.psd_tol || eig.values(d - 1) > 1.0 + tol.psd_tol) {
    throw Error(ErrorKind::OutOfUnitInterval, "x must satisfy 0 <= x <= 1");
  }
  const Matrix& pm = p.matrix();
  const Matrix pc = Matrix::Identity(d, d) - pm;
  const Matrix pxp = pm * x * pm;

  OrderDiagnostic out;
  const double a = tol.atol;
  out.case_a[0] = make_check(order_deficit(pm, x, tol), a);
  out.case_a[1] = make_check(op_norm(pxp - pm), a);
  out.case_a[2] = make_check(op_norm(x - pm - pc * x * pc), a);
  out.case_a[3] = make_check(op_norm(x * pm - pm), a);
  out.case_a[4] = make_check(op_norm(pm * x - pm), a);

  out.case_b[0] = make_check(order_deficit(x, pm, tol), a);
  out.case_b[1] = make_check(op_norm(pxp - x), a);
  out.case_b[2] = make_check(op_norm(x - x * pm), a);
  out.case_b[3] = make_check(op_norm(x - pm * x), a);
  return out;
}

}  // namespace qds
