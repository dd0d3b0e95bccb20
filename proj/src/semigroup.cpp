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

#include "qds/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace qds {

Semigroup::Semigroup(QuantumChannel channel)
    : model_(std::move(channel)),
      heisenberg_(to_superoperator(std::get<QuantumChannel>(model_), Picture::Heisenberg)),
      schrodinger_(to_superoperator(std::get<QuantumChannel>(model_), Picture::Schrodinger)) {}

Semigroup::Semigroup(LindbladGenerator generator)
    : model_(std::move(generator)),
      heisenberg_(to_superoperator(std::get<LindbladGenerator>(model_), Picture::Heisenberg)),
      schrodinger_(to_superoperator(std::get<LindbladGenerator>(model_), Picture::Schrodinger)) {}

std::int64_t Semigroup::steps(double t) const {
  if (!(t >= 0.0)) throw Error(ErrorKind::NegativeTime, "evolution time must be non-negative");
  return std::llround(t);
}

Superoperator Semigroup::propagator(double t, Picture picture) const {
  if (!(t >= 0.0)) throw Error(ErrorKind::NegativeTime, "evolution time must be non-negative");
  const Superoperator& b = base(picture);
  if (is_discrete()) return power(b, steps(t));
  return Superoperator{b.dim, matrix_exp(t * b.matrix), picture};
}

Matrix Semigroup::heisenberg(const Matrix& a, double t) const {
  return propagator(t, Picture::Heisenberg).apply(a);
}

Matrix Semigroup::schrodinger(const Matrix& rho, double t) const {
  return propagator(t, Picture::Schrodinger).apply(rho);
}

Superoperator Semigroup::ergodic_projection(Picture picture, const Tolerances& tol) const {
  const int n = dim() * dim();
  Matrix a = schrodinger_.matrix;
  if (is_discrete()) a -= Matrix::Identity(n, n);

  // ker(A) holds the stationary states, ker(A^dagger) the conserved
  // observables; 0 is a semisimple eigenvalue for a bounded semigroup, so
  // R (L^dagger R)^{-1} L^dagger is the spectral projection onto ker(A).
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double cutoff = std::max(tol.rank_rtol * std::max(s(0), 1.0), tol.atol);
  int rank = 0;
  while (rank < n && s(rank) > cutoff) ++rank;
  const int null_dim = n - rank;
  if (null_dim == 0) {
    throw Error(ErrorKind::InternalError, "numerical stationary space is empty");
  }
  const Matrix right = svd.matrixV().rightCols(null_dim);
  const Matrix left = svd.matrixU().rightCols(null_dim);
  const Matrix overlap = left.adjoint() * right;
  Eigen::FullPivLU<Matrix> lu(overlap);
  if (!lu.isInvertible()) {
    throw Error(ErrorKind::InternalError, "stationary and conserved spaces are not in duality");
  }
  Superoperator proj{dim(), right * lu.solve(left.adjoint()), Picture::Schrodinger};
  return picture == Picture::Schrodinger ? proj : proj.adjoint();
}

double Semigroup::spectral_gap(const Tolerances& tol) const {
  Eigen::ComplexEigenSolver<Matrix> solver(schrodinger_.matrix, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InternalError, "eigensolver failed on superoperator");
  }
  const auto& ev = solver.eigenvalues();
  double gap = std::numeric_limits<double>::infinity();
  const double peripheral = std::sqrt(tol.rank_rtol);
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (is_discrete()) {
      const double mag = std::abs(ev(k));
      if (mag >= 1.0 - peripheral) continue;
      gap = std::min(gap, mag > 0.0 ? -std::log(mag) : std::numeric_limits<double>::infinity());
    } else {
      const double rate = -ev(k).real();
      if (rate <= peripheral) continue;
      gap = std::min(gap, rate);
    }
  }
  return gap;
}

Semigroup Semigroup::restrict(const Projection& p) const {
  if (p.dim() != dim()) throw Error(ErrorKind::DimMismatch, "restriction projection dimension");
  if (p.rank() == 0) throw Error(ErrorKind::ValidationError, "cannot restrict to the zero projection");
  const Matrix& b = p.basis();
  auto compress = [&](const Matrix& x) -> Matrix { return b.adjoint() * x * b; };
  if (const QuantumChannel* ch = channel()) {
    std::vector<Matrix> kraus;
    for (const Matrix& v : ch->kraus()) kraus.push_back(compress(v));
    return Semigroup(QuantumChannel::unchecked(std::move(kraus)));
  }
  const LindbladGenerator& gen = *generator();
  Matrix h = compress(gen.hamiltonian());
  h = 0.5 * (h + h.adjoint());
  std::vector<Matrix> ops;
  for (const Matrix& l : gen.lindblad_ops()) ops.push_back(compress(l));
  return Semigroup(LindbladGenerator(std::move(h), std::move(ops)));
}

}  // namespace qds
