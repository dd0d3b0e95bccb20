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

#include "qds/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qds/kernels.hpp"
#include "qds/random.hpp"

namespace qds {

const char* to_string(Picture p) {
  return p == Picture::Heisenberg ? "heisenberg" : "schrodinger";
}

// ---------------------------------------------------------------------------

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, const Tolerances& tol)
    : QuantumChannel(std::move(kraus), true, tol) {}

QuantumChannel QuantumChannel::unchecked(std::vector<Matrix> kraus) {
  return QuantumChannel(std::move(kraus), false, Tolerances{});
}

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, bool check, const Tolerances& tol)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorKind::ValidationError, "channel needs at least one Kraus operator");
  dim_ = static_cast<int>(kraus_.front().rows());
  for (const Matrix& v : kraus_) {
    require_square(v, "Kraus operator");
    require_same_dim(v, kraus_.front(), "Kraus operators");
  }
  if (check) {
    const double res = unitality_residual();
    if (res > tol.atol) {
      throw Error(ErrorKind::NotUnital, "||sum V^dagger V - 1|| = " + std::to_string(res));
    }
  }
}

double QuantumChannel::unitality_residual() const {
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (const Matrix& v : kraus_) sum += v.adjoint() * v;
  return op_norm(sum - Matrix::Identity(dim_, dim_));
}

LindbladGenerator::LindbladGenerator(Matrix hamiltonian, std::vector<Matrix> lindblad_ops,
                                     const Tolerances& tol)
    : hamiltonian_(std::move(hamiltonian)), lindblad_ops_(std::move(lindblad_ops)) {
  require_square(hamiltonian_, "Hamiltonian");
  for (const Matrix& l : lindblad_ops_) {
    require_square(l, "Lindblad operator");
    require_same_dim(l, hamiltonian_, "Lindblad operator");
  }
  const double res = hermiticity_residual(hamiltonian_);
  if (res > tol.atol) {
    throw Error(ErrorKind::NotHermitian, "Hamiltonian hermiticity residual " + std::to_string(res));
  }
}

Matrix LindbladGenerator::effective() const {
  Matrix g = -kI * hamiltonian_;
  for (const Matrix& l : lindblad_ops_) g -= 0.5 * (l.adjoint() * l);
  return g;
}

// ---------------------------------------------------------------------------

Vector vec(const Matrix& a) { return Eigen::Map<const Vector>(a.data(), a.size()); }

Matrix unvec(const Vector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw Error(ErrorKind::DimMismatch, "vector length is not dim^2");
  }
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix kron(const Matrix& a, const Matrix& b) { return kernels::kron(a, b, kernels::Exec::Serial); }

Matrix Superoperator::apply(const Matrix& a) const {
  if (a.rows() != dim || a.cols() != dim) {
    throw Error(ErrorKind::DimMismatch, "superoperator applied to wrong dimension");
  }
  return unvec(matrix * vec(a), dim);
}

Superoperator Superoperator::adjoint() const {
  return Superoperator{dim, matrix.adjoint(),
                       picture == Picture::Heisenberg ? Picture::Schrodinger : Picture::Heisenberg};
}

Superoperator Superoperator::identity(int dim, Picture picture) {
  return Superoperator{dim, Matrix::Identity(dim * dim, dim * dim), picture};
}

DensityMatrix::DensityMatrix(Matrix rho, const Tolerances& tol) : rho_(std::move(rho)) {
  require_square(rho_, "density matrix");
  const double herm = hermiticity_residual(rho_);
  if (herm > tol.atol) throw Error(ErrorKind::NotHermitian, "density matrix is not Hermitian");
  rho_ = 0.5 * (rho_ + rho_.adjoint());
  if (!is_psd(rho_, tol)) throw Error(ErrorKind::NotPSD, "density matrix is not positive");
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > tol.atol) {
    throw Error(ErrorKind::ValidationError, "density matrix trace " + std::to_string(tr));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Matrix StinespringDilation::represent(const Matrix& a) const {
  return kron(a, Matrix::Identity(multiplicity, multiplicity));
}

Matrix StinespringDilation::apply(const Matrix& a) const {
  return isometry.adjoint() * represent(a) * isometry;
}

// ---------------------------------------------------------------------------

Matrix apply_heisenberg(const QuantumChannel& ch, const Matrix& a) {
  require_same_dim(a, ch.kraus().front(), "apply_heisenberg");
  Matrix out = Matrix::Zero(ch.dim(), ch.dim());
  for (const Matrix& v : ch.kraus()) out += v.adjoint() * a * v;
  return out;
}

Matrix apply_predual(const QuantumChannel& ch, const Matrix& rho) {
  require_same_dim(rho, ch.kraus().front(), "apply_schrodinger");
  Matrix out = Matrix::Zero(ch.dim(), ch.dim());
  for (const Matrix& v : ch.kraus()) out += v * rho * v.adjoint();
  return out;
}

DensityMatrix apply_schrodinger(const QuantumChannel& ch, const DensityMatrix& rho,
                                const Tolerances& tol) {
  return DensityMatrix(apply_predual(ch, rho.matrix()), tol);
}

Matrix lindblad_apply(const LindbladGenerator& gen, const Matrix& a, Picture picture) {
  require_same_dim(a, gen.hamiltonian(), "lindblad_apply");
  const Matrix& h = gen.hamiltonian();
  Matrix out;
  if (picture == Picture::Heisenberg) {
    out = kI * (h * a - a * h);
    for (const Matrix& l : gen.lindblad_ops()) {
      const Matrix ldl = l.adjoint() * l;
      out += l.adjoint() * a * l - 0.5 * (ldl * a + a * ldl);
    }
  } else {
    out = -kI * (h * a - a * h);
    for (const Matrix& l : gen.lindblad_ops()) {
      const Matrix ldl = l.adjoint() * l;
      out += l * a * l.adjoint() - 0.5 * (ldl * a + a * ldl);
    }
  }
  return out;
}

Superoperator to_superoperator(const QuantumChannel& ch, Picture picture) {
  const int d = ch.dim();
  Matrix s = Matrix::Zero(d * d, d * d);
  for (const Matrix& v : ch.kraus()) {
    if (picture == Picture::Heisenberg) {
      s += kron(v.transpose(), v.adjoint());  // V^dagger a V
    } else {
      s += kron(v.conjugate(), v);  // V rho V^dagger
    }
  }
  return Superoperator{d, std::move(s), picture};
}

Superoperator to_superoperator(const LindbladGenerator& gen, Picture picture) {
  const int d = gen.dim();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix g = gen.effective();
  Matrix s;
  if (picture == Picture::Heisenberg) {
    // G^dagger a + a G + sum L^dagger a L
    s = kron(id, g.adjoint()) + kron(g.transpose(), id);
    for (const Matrix& l : gen.lindblad_ops()) s += kron(l.transpose(), l.adjoint());
  } else {
    // G rho + rho G^dagger + sum L rho L^dagger
    s = kron(id, g) + kron(g.conjugate(), id);
    for (const Matrix& l : gen.lindblad_ops()) s += kron(l.conjugate(), l);
  }
  return Superoperator{d, std::move(s), picture};
}

Superoperator evolve(const LindbladGenerator& gen, double t, Picture picture) {
  if (!(t >= 0.0)) throw Error(ErrorKind::NegativeTime, "evolution time must be non-negative");
  const Superoperator s = to_superoperator(gen, picture);
  return Superoperator{s.dim, matrix_exp(t * s.matrix), picture};
}

Superoperator power(const Superoperator& s, std::int64_t n) {
  if (n < 0) throw Error(ErrorKind::NegativeTime, "negative iteration count");
  Superoperator result = Superoperator::identity(s.dim, s.picture);
  Matrix base = s.matrix;
  while (n > 0) {
    if (n & 1) result.matrix = result.matrix * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

QuantumChannel channel_from_superoperator(const Superoperator& s, const Tolerances& tol) {
  const Superoperator schr = s.picture == Picture::Schrodinger ? s : s.adjoint();
  const int d = schr.dim;
  // Choi[(a + b d), (a' + b' d)] = nu(|b><b'|)(a, a') = sum_k vec(V_k) vec(V_k)^dagger.
  Matrix choi(d * d, d * d);
  for (int b = 0; b < d; ++b) {
    for (int bp = 0; bp < d; ++bp) {
      for (int a = 0; a < d; ++a) {
        for (int ap = 0; ap < d; ++ap) choi(a + b * d, ap + bp * d) = schr.matrix(a + ap * d, b + bp * d);
      }
    }
  }
  const HermitianEig eig = hermitian_eig(choi, tol);
  if (eig.values(0) < -tol.psd_tol) {
    throw Error(ErrorKind::NotPSD, "Choi matrix has eigenvalue " + std::to_string(eig.values(0)));
  }
  const double cutoff = std::max(tol.rank_rtol * eig.values(d * d - 1), tol.atol * tol.atol);
  std::vector<Matrix> kraus;
  for (int k = d * d - 1; k >= 0; --k) {
    if (eig.values(k) <= cutoff) break;
    kraus.push_back(std::sqrt(eig.values(k)) * unvec(eig.vectors.col(k), d));
  }
  if (kraus.empty()) kraus.push_back(Matrix::Zero(d, d));
  return QuantumChannel::unchecked(std::move(kraus));
}

// ---------------------------------------------------------------------------

StinespringDilation stinespring_dilate(const QuantumChannel& ch, const Tolerances& tol) {
  const double res = ch.unitality_residual();
  if (res > tol.atol) {
    throw Error(ErrorKind::NotUnital, "cannot dilate a non-unital family (residual " +
                                          std::to_string(res) + ")");
  }
  const int d = ch.dim();
  const int n = static_cast<int>(ch.kraus().size());
  // V k = sum_i (V_i k) kron e_i, i.e. row a*n + i holds row a of V_i.
  Matrix iso = Matrix::Zero(d * n, d);
  for (int i = 0; i < n; ++i) {
    const Matrix& v = ch.kraus()[i];
    for (int a = 0; a < d; ++a) iso.row(a * n + i) = v.row(a);
  }
  return StinespringDilation{std::move(iso), n};
}

double dilation_residual(const QuantumChannel& ch, const StinespringDilation& dil) {
  const int d = ch.dim();
  double worst = 0.0;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      const Matrix e = matrix_unit(d, i, j);
      worst = std::max(worst, op_norm(apply_heisenberg(ch, e) - dil.apply(e)));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------

bool StructureReport::ok(const Tolerances& tol) const { return failures(tol).empty(); }

std::vector<std::string> StructureReport::failures(const Tolerances& tol) const {
  std::vector<std::string> out;
  if (unitality_residual > tol.atol) out.emplace_back("unitality");
  if (trace_preservation_residual > tol.atol) out.emplace_back("trace_preservation");
  if (hamiltonian_hermiticity > tol.atol) out.emplace_back("hamiltonian_hermiticity");
  if (duality_residual > tol.atol) out.emplace_back("duality");
  return out;
}

namespace {

template <typename Heis, typename Schr>
StructureReport structure_of(int d, bool generator, const Heis& heis, const Schr& schr,
                             std::uint64_t seed, int pairs) {
  // A generator annihilates the identity and has traceless output; a channel
  // fixes the identity and preserves the trace.
  const double ref = generator ? 0.0 : 1.0;
  StructureReport rep;
  rep.unitality_residual = op_norm(heis(Matrix::Identity(d, d)) - ref * Matrix::Identity(d, d));
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      const Matrix e = matrix_unit(d, i, j);
      rep.trace_preservation_residual =
          std::max(rep.trace_preservation_residual, std::abs(schr(e).trace() - ref * e.trace()));
    }
  }
  Rng rng(seed);
  for (int k = 0; k < pairs; ++k) {
    const Matrix rho = rng.density(d);
    const Matrix a = rng.gaussian(d, d);
    const Complex lhs = (schr(rho) * a).trace();
    const Complex rhs = (rho * heis(a)).trace();
    rep.duality_residual = std::max(rep.duality_residual, std::abs(lhs - rhs));
  }
  return rep;
}

}  // namespace

StructureReport check_structure(const QuantumChannel& ch, std::uint64_t seed, int pairs) {
  return structure_of(
      ch.dim(), false, [&](const Matrix& a) { return apply_heisenberg(ch, a); },
      [&](const Matrix& r) { return apply_predual(ch, r); }, seed, pairs);
}

StructureReport check_structure(const LindbladGenerator& gen, std::uint64_t seed, int pairs) {
  StructureReport rep = structure_of(
      gen.dim(), true, [&](const Matrix& a) { return lindblad_apply(gen, a, Picture::Heisenberg); },
      [&](const Matrix& r) { return lindblad_apply(gen, r, Picture::Schrodinger); }, seed, pairs);
  rep.hamiltonian_hermiticity = hermiticity_residual(gen.hamiltonian());
  return rep;
}

}  // namespace qds
