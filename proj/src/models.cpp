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

#include "qds/models.hpp"

#include <cmath>
#include <numeric>

namespace qds {

LindbladGenerator identity_generator(int d) { return LindbladGenerator(zero(d), {}); }

LindbladGenerator amplitude_damping(double gamma) {
  return LindbladGenerator(zero(2), {std::sqrt(gamma) * matrix_unit(2, 0, 1)});
}

QuantumChannel amplitude_damping_channel(double gamma) {
  return QuantumChannel({diag({1.0, std::sqrt(1.0 - gamma)}), std::sqrt(gamma) * matrix_unit(2, 0, 1)});
}

LindbladGenerator three_level_cascade() {
  return LindbladGenerator(diag({0.0, 1.0, 0.0}), {matrix_unit(3, 0, 2), matrix_unit(3, 1, 2)});
}

LindbladGenerator decoherence_free_three_level() {
  return LindbladGenerator(zero(3), {matrix_unit(3, 0, 2), matrix_unit(3, 1, 2)});
}

LindbladGenerator thermal_qubit(double gamma_down, double gamma_up) {
  return LindbladGenerator(zero(2), {std::sqrt(gamma_down) * matrix_unit(2, 0, 1),
                                     std::sqrt(gamma_up) * matrix_unit(2, 1, 0)});
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"ID2", "ID3", "AD", "ADK", "M3", "DFS3", "TH"};
  return names;
}

Fixture fixture(const std::string& name) {
  if (name == "ID2") return {name, "zero generator on C^2", Semigroup(identity_generator(2))};
  if (name == "ID3") return {name, "zero generator on C^3", Semigroup(identity_generator(3))};
  if (name == "AD") return {name, "amplitude damping, gamma = 1", Semigroup(amplitude_damping(1.0))};
  if (name == "ADK") {
    // 0.7^100 ~ 3e-16: enough iterations for the discrete decay to be decisive.
    return {name, "amplitude damping channel, gamma = 0.3",
            Semigroup(amplitude_damping_channel(0.3)), 100.0};
  }
  if (name == "M3") return {name, "three-level cascade with H = diag(0,1,0)", Semigroup(three_level_cascade())};
  if (name == "DFS3") {
    return {name, "three-level cascade without Hamiltonian", Semigroup(decoherence_free_three_level())};
  }
  if (name == "TH") return {name, "thermal qubit, gamma_down = 2, gamma_up = 1", Semigroup(thermal_qubit(2.0, 1.0))};
  throw Error(ErrorKind::ValidationError, "unknown fixture '" + name + "'");
}

// ---------------------------------------------------------------------------

QuantumChannel random_channel(int d, int n_kraus, Rng& rng) {
  const Matrix w = rng.isometry(d * n_kraus, d);
  std::vector<Matrix> kraus(n_kraus, Matrix::Zero(d, d));
  for (int i = 0; i < n_kraus; ++i) {
    for (int a = 0; a < d; ++a) kraus[i].row(a) = w.row(a * n_kraus + i);
  }
  return QuantumChannel(std::move(kraus));
}

int BlockLayout::dim() const {
  return std::accumulate(blocks.begin(), blocks.end(), 0) + transient;
}

BlockLayout random_layout(int d, Rng& rng) {
  BlockLayout layout;
  layout.transient = rng.uniform_int(0, d - 1);
  int left = d - layout.transient;
  while (left > 0) {
    const int size = rng.uniform_int(1, left);
    layout.blocks.push_back(size);
    layout.decoherence_free.push_back(size >= 2 && rng.uniform() < 0.3);
    left -= size;
  }
  return layout;
}

namespace {

std::vector<int> block_offsets(const BlockLayout& layout) {
  std::vector<int> off{0};
  for (int b : layout.blocks) off.push_back(off.back() + b);
  return off;
}

void finish_projections(StructuredModel& m) {
  const int d = m.layout.dim();
  const std::vector<int> off = block_offsets(m.layout);
  for (std::size_t j = 0; j < m.layout.blocks.size(); ++j) {
    m.blocks.push_back(
        Projection::from_basis(m.frame.middleCols(off[j], m.layout.blocks[j]), d));
  }
  m.transient = Projection::from_basis(m.frame.rightCols(m.layout.transient), d);
}

}  // namespace

StructuredModel random_structured_channel(const BlockLayout& layout, int n_kraus, Rng& rng) {
  const int d = layout.dim();
  const int n = n_kraus;
  if (layout.transient > 0 && n < 2) {
    throw Error(ErrorKind::ValidationError, "transient levels need at least two Kraus operators");
  }
  const std::vector<int> off = block_offsets(layout);

  // Stinespring isometry, row a*n + i holding row a of V_i. Columns of block j
  // are supported on rows of block j, so V_i maps the block into itself.
  Matrix w = Matrix::Zero(d * n, d);
  for (std::size_t j = 0; j < layout.blocks.size(); ++j) {
    const int lo = off[j];
    const int size = layout.blocks[j];
    if (layout.decoherence_free[j]) {
      const Matrix c = rng.isometry(n, 1);
      for (int k = 0; k < size; ++k) {
        for (int i = 0; i < n; ++i) w((lo + k) * n + i, lo + k) = c(i, 0);
      }
    } else {
      const Matrix iso = rng.isometry(size * n, size);
      for (int k = 0; k < size; ++k) {
        for (int a = 0; a < size; ++a) {
          for (int i = 0; i < n; ++i) w((lo + a) * n + i, lo + k) = iso(a * n + i, k);
        }
      }
    }
  }
  // Transient columns: random, then orthogonalised against everything before.
  const int first_transient = off.back();
  for (int k = first_transient; k < d; ++k) {
    Vector v = rng.gaussian(d * n, 1).col(0);
    for (int pass = 0; pass < 2; ++pass) {
      for (int c = 0; c < k; ++c) v -= w.col(c) * (w.col(c).adjoint() * v)(0, 0);
    }
    w.col(k) = v / v.norm();
  }

  const Matrix u = rng.unitary(d);
  std::vector<Matrix> kraus(n, Matrix::Zero(d, d));
  for (int i = 0; i < n; ++i) {
    Matrix v = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a) v.row(a) = w.row(a * n + i);
    kraus[i] = u * v * u.adjoint();
  }
  StructuredModel m{Semigroup(QuantumChannel(std::move(kraus))), layout, u,
                    {}, Projection::zero(d)};
  finish_projections(m);
  return m;
}

StructuredModel random_structured_generator(const BlockLayout& layout, int n_ops, Rng& rng) {
  const int d = layout.dim();
  const std::vector<int> off = block_offsets(layout);
  const int t0 = off.back();
  const int nt = layout.transient;

  std::vector<Matrix> ops;
  for (int i = 0; i < n_ops; ++i) {
    Matrix l = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < layout.blocks.size(); ++j) {
      const int size = layout.blocks[j];
      if (layout.decoherence_free[j]) {
        l.block(off[j], off[j], size, size) =
            Complex(rng.normal(), rng.normal()) * Matrix::Identity(size, size);
      } else {
        l.block(off[j], off[j], size, size) = rng.gaussian(size, size);
      }
    }
    if (nt > 0) l.rightCols(nt) = rng.gaussian(d, nt);
    ops.push_back(std::move(l));
  }

  Matrix h = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < layout.blocks.size(); ++j) {
    const int size = layout.blocks[j];
    h.block(off[j], off[j], size, size) =
        layout.decoherence_free[j] ? Matrix(rng.normal() * Matrix::Identity(size, size))
                                   : rng.hermitian(size);
  }
  if (nt > 0) {
    h.block(t0, t0, nt, nt) = rng.hermitian(nt);
    // Cancels the transient-to-block part of sum L^dagger L in G = -iH - K/2.
    Matrix k = Matrix::Zero(d, d);
    for (const Matrix& l : ops) k += l.adjoint() * l;
    const Matrix coupling = 0.5 * kI * k.block(t0, 0, nt, t0);
    h.block(t0, 0, nt, t0) = coupling;
    h.block(0, t0, t0, nt) = coupling.adjoint();
  }

  const Matrix u = rng.unitary(d);
  Matrix hl = u * h * u.adjoint();
  hl = 0.5 * (hl + hl.adjoint());
  for (Matrix& l : ops) l = u * l * u.adjoint();
  StructuredModel m{Semigroup(LindbladGenerator(std::move(hl), std::move(ops))), layout, u,
                    {}, Projection::zero(d)};
  finish_projections(m);
  return m;
}

Projection random_invariant_projection(const StructuredModel& m, Rng& rng) {
  const int d = m.layout.dim();
  const std::vector<int> off = block_offsets(m.layout);
  std::vector<Vector> columns;
  for (std::size_t j = 0; j < m.layout.blocks.size(); ++j) {
    const int size = m.layout.blocks[j];
    if (rng.uniform() < 0.5) continue;
    if (m.layout.decoherence_free[j] && rng.uniform() < 0.5) {
      const int rank = rng.uniform_int(1, size);
      const Matrix sub = rng.isometry(size, rank);
      for (int c = 0; c < rank; ++c) columns.push_back(m.frame.middleCols(off[j], size) * sub.col(c));
    } else {
      for (int c = 0; c < size; ++c) columns.push_back(m.frame.col(off[j] + c));
    }
  }
  Matrix basis(d, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) basis.col(c) = columns[c];
  return Projection::onto_span(basis, d);
}

}  // namespace qds
