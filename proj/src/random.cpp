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

#include "qds/random.hpp"

#include <cmath>

namespace qds {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(engine_);
}

int Rng::uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  return dist(engine_);
}

double Rng::normal() {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(engine_);
}

Matrix Rng::gaussian(int rows, int cols) {
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) g(i, j) = Complex(normal(), normal()) / std::sqrt(2.0);
  }
  return g;
}

Matrix Rng::isometry(int rows, int cols) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(rows, cols));
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  // Rescale columns by the phases of R's diagonal so the distribution is Haar.
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

Matrix Rng::hermitian(int dim) {
  const Matrix g = gaussian(dim, dim);
  return 0.5 * (g + g.adjoint());
}

Matrix Rng::unit_interval_hermitian(int dim) {
  const Matrix u = unitary(dim);
  RealVector spectrum(dim);
  for (int k = 0; k < dim; ++k) spectrum(k) = uniform();
  return u * spectrum.cast<Complex>().asDiagonal() * u.adjoint();
}

Matrix Rng::density(int dim) {
  const Matrix g = gaussian(dim, dim);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

Projection Rng::projection(int dim, int rank) {
  if (rank <= 0) return Projection::zero(dim);
  return Projection::from_basis(isometry(dim, rank), dim);
}

}  // namespace qds
