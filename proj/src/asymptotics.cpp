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

#include "qds/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qds/kernels.hpp"
#include "qds/random.hpp"

namespace qds {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Real coordinates of a Hermitian matrix in which the Hilbert-Schmidt inner
// product is the Euclidean one.
Eigen::VectorXd hermitian_to_real(const Matrix& h) {
  const int d = static_cast<int>(h.rows());
  Eigen::VectorXd v(d * d);
  int k = 0;
  for (int i = 0; i < d; ++i) v(k++) = h(i, i).real();
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      v(k++) = kSqrt2 * h(i, j).real();
      v(k++) = kSqrt2 * h(i, j).imag();
    }
  }
  return v;
}

Matrix real_to_hermitian(const Eigen::VectorXd& v, int d) {
  Matrix h = Matrix::Zero(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i) h(i, i) = v(k++);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double re = v(k++) / kSqrt2;
      const double im = v(k++) / kSqrt2;
      h(i, j) = Complex(re, im);
      h(j, i) = Complex(re, -im);
    }
  }
  return h;
}

/// Right null vectors of the superoperator minus (1 for channels, 0 for generators).
Matrix null_vectors(const Semigroup& sg, Picture picture, const Tolerances& tol) {
  const int n = sg.dim() * sg.dim();
  Matrix a = sg.base(picture).matrix;
  if (sg.is_discrete()) a -= Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double cutoff = std::max(tol.rank_rtol * std::max(s(0), 1.0), tol.atol);
  int rank = 0;
  while (rank < n && s(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

/// Hermitian orthonormal basis of an adjoint-closed operator space given by
/// column-stacked spanning vectors.
std::vector<Matrix> hermitian_span(const Matrix& vectors, int d, const Tolerances& tol) {
  const int m = static_cast<int>(vectors.cols());
  if (m == 0) return {};
  Eigen::MatrixXd real(d * d, 2 * m);
  for (int k = 0; k < m; ++k) {
    const Matrix x = unvec(vectors.col(k), d);
    real.col(2 * k) = hermitian_to_real(0.5 * (x + x.adjoint()));
    real.col(2 * k + 1) = hermitian_to_real((x - x.adjoint()) / (2.0 * kI));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(real, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = std::max(tol.rank_rtol * s(0), tol.atol);
  std::vector<Matrix> basis;
  for (int k = 0; k < s.size() && s(k) > cutoff; ++k) {
    basis.push_back(real_to_hermitian(svd.matrixU().col(k), d));
  }
  return basis;
}

Matrix hermitize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

DensityMatrix normalised_state(const Matrix& a, const Tolerances& tol) {
  const Matrix h = hermitize(a);
  return DensityMatrix(h / h.trace().real(), tol);
}

/// Positive part of a Hermitian matrix, with spectral noise below the rank
/// cutoff dropped.
Matrix positive_part(const Matrix& h, const Tolerances& tol) {
  const HermitianEig eig = hermitian_eig(h, tol);
  const double scale = eig.values.cwiseAbs().maxCoeff();
  const double cutoff = std::max(tol.rank_rtol * scale, tol.atol);
  Matrix out = Matrix::Zero(h.rows(), h.cols());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > cutoff) out += eig.values(k) * eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  }
  return out;
}

double commutator_norm(const std::vector<Matrix>& algebra) {
  double worst = 0.0;
  for (std::size_t i = 0; i < algebra.size(); ++i) {
    for (std::size_t j = i + 1; j < algebra.size(); ++j) {
      worst = std::max(worst, op_norm(algebra[i] * algebra[j] - algebra[j] * algebra[i]));
    }
  }
  return worst;
}

}  // namespace

// ---------------------------------------------------------------------------

StationarySpace stationary_space(const Semigroup& sg, const Tolerances& tol) {
  const int d = sg.dim();
  StationarySpace space;
  space.basis = hermitian_span(null_vectors(sg, Picture::Schrodinger, tol), d, tol);
  space.dim = static_cast<int>(space.basis.size());
  if (space.dim == 0) throw Error(ErrorKind::InternalError, "numerical stationary space is empty");

  const Superoperator ergodic = sg.ergodic_projection(Picture::Schrodinger, tol);
  space.states.push_back(
      normalised_state(ergodic.apply(Matrix::Identity(d, d) / static_cast<double>(d)), tol));

  // Jordan parts of a stationary Hermitian operator are stationary for a
  // trace-preserving positive map.
  for (const Matrix& b : space.basis) {
    for (const Matrix& part : {positive_part(b, tol), positive_part(Matrix(-b), tol)}) {
      const double tr = part.trace().real();
      if (tr > std::sqrt(tol.atol)) space.states.push_back(normalised_state(part, tol));
    }
  }
  return space;
}

std::vector<Matrix> fixed_point_basis(const Semigroup& sg, const Tolerances& tol) {
  return hermitian_span(null_vectors(sg, Picture::Heisenberg, tol), sg.dim(), tol);
}

Projection groh_r(const StationarySpace& space, const Tolerances& tol) {
  if (space.states.empty()) throw Error(ErrorKind::InternalError, "no stationary states");
  std::vector<Projection> supports;
  for (const DensityMatrix& w : space.states) supports.push_back(w.support(tol));
  return proj_supremum(supports, tol);
}

// ---------------------------------------------------------------------------

namespace {

struct Refinement {
  const Tolerances& tol;
  Rng rng;
  int full_dim;
  int retries = 0;
  std::vector<Projection> found;

  void refine(const Semigroup& model, const Matrix& embed) {
    const std::vector<Matrix> fixed = fixed_point_basis(model, tol);
    const int k = model.dim();
    if (fixed.size() <= 1) {
      const StationarySpace st = stationary_space(model, tol);
      if (st.dim != 1 || st.states.front().support(tol).rank() != k) {
        throw Error(ErrorKind::ConvergenceFailure,
                    "block with trivial fixed algebra lacks a unique faithful stationary state");
      }
      found.push_back(Projection::from_basis(embed, full_dim, tol));
      return;
    }

    constexpr int kMaxDraws = 8;
    constexpr double kCluster = 1e-7;    // eigenvalues closer than this are one cluster
    constexpr double kSeparation = 1e-4; // clusters closer than this are an unlucky draw
    for (int draw = 0; draw < kMaxDraws; ++draw) {
      Matrix h = Matrix::Zero(k, k);
      for (const Matrix& f : fixed) h += rng.normal() * f;
      const HermitianEig eig = hermitian_eig(hermitize(h), tol);

      std::vector<int> starts{0};
      bool ambiguous = false;
      for (int i = 1; i < k; ++i) {
        const double gap = eig.values(i) - eig.values(i - 1);
        if (gap > kSeparation) {
          starts.push_back(i);
        } else if (gap > kCluster) {
          ambiguous = true;
        }
      }
      if (ambiguous || starts.size() < 2) {
        ++retries;
        continue;
      }
      starts.push_back(k);
      for (std::size_t g = 0; g + 1 < starts.size(); ++g) {
        const Matrix cols = eig.vectors.middleCols(starts[g], starts[g + 1] - starts[g]);
        const Projection piece = Projection::from_basis(cols, k, tol);
        const double leak = invariance_leak(model, piece);
        if (leak > tol.atol) {
          throw Error(ErrorKind::ConvergenceFailure,
                      "spectral projection of a fixed element is not invariant (leak " +
                          std::to_string(leak) + ")");
        }
        refine(model.restrict(piece), embed * cols);
      }
      return;
    }
    throw Error(ErrorKind::ConvergenceFailure, "no generic fixed element found in 8 draws");
  }
};

}  // namespace

EnclosureDecomposition minimal_enclosures(const Semigroup& sg, const Tolerances& tol,
                                          std::uint64_t seed) {
  const int d = sg.dim();
  const Superoperator ergodic = sg.ergodic_projection(Picture::Schrodinger, tol);
  const Matrix maximal = hermitize(ergodic.apply(Matrix::Identity(d, d) / static_cast<double>(d)));
  const Projection recurrent = support_projection(maximal, tol);
  const double leak = invariance_leak(sg, recurrent);
  if (leak > tol.atol) {
    throw Error(ErrorKind::ConvergenceFailure,
                "support of the maximal stationary state is not invariant (leak " +
                    std::to_string(leak) + ")");
  }

  const Semigroup block = sg.restrict(recurrent);
  const std::vector<Matrix> algebra = fixed_point_basis(block, tol);

  Refinement work{tol, Rng(seed), d};
  work.refine(block, recurrent.basis());

  EnclosureDecomposition out;
  out.minimal_projections = std::move(work.found);
  out.fixed_algebra_dim = static_cast<int>(algebra.size());
  out.is_unique = commutator_norm(algebra) <= tol.atol;
  out.retries = work.retries;
  return out;
}

// ---------------------------------------------------------------------------

RecurrentReport recurrent_projection(const Semigroup& sg, const AsymptoticOptions& opts,
                                     const Tolerances& tol) {
  if (!(opts.horizon > 0.0)) throw Error(ErrorKind::ValidationError, "horizon must be positive");
  const int d = sg.dim();
  StationarySpace space = stationary_space(sg, tol);
  Projection r = groh_r(space, tol);
  EnclosureDecomposition dec = minimal_enclosures(sg, tol, opts.seed);
  Projection r_o = proj_supremum(dec.minimal_projections, tol);

  const Superoperator alpha_t = sg.propagator(opts.horizon, Picture::Heisenberg);
  Matrix x = hermitize(alpha_t.apply(r_o.matrix()));
  const Matrix tail = alpha_t.apply(r_o.complement().matrix());

  RecurrentReport rep{std::move(r_o), std::move(r), std::move(x)};
  rep.sup_deviation = op_norm(rep.x_estimate - Matrix::Identity(d, d));
  rep.transient_norm = op_norm(tail);
  rep.r_distance = distance(rep.r, rep.r_o);
  rep.r_equals_ro = rep.r_distance <= tol.atol;
  rep.faithful_family = rep.r.rank() == d;
  rep.x_support_rank = support_projection(rep.x_estimate, tol).rank();
  rep.decomposition = std::move(dec);
  rep.stationary = std::move(space);
  if (rep.faithful_family && rep.r_o.rank() != d) {
    throw Error(ErrorKind::TheoremViolation,
                "faithful stationary family but the recurrent projection has rank " +
                    std::to_string(rep.r_o.rank()));
  }
  return rep;
}

// ---------------------------------------------------------------------------

bool DecayIdealTest::agree() const {
  if (algebraic.decision == Decision::Indeterminate || dynamic.decision == Decision::Indeterminate) {
    return true;
  }
  return algebraic.decision == dynamic.decision;
}

namespace {

DecayIdealTest decay_with(const Superoperator& alpha_t, const Matrix& a, const Projection& r_o,
                          const AsymptoticOptions& opts, const Tolerances& tol) {
  require_same_dim(a, r_o.matrix(), "decay_ideal_test");
  DecayIdealTest out;
  out.algebraic = make_check(op_norm(a * r_o.matrix()), tol.atol);
  out.dynamic = make_check(op_norm(alpha_t.apply(a.adjoint() * a)), opts.decay_tol);
  return out;
}

}  // namespace

DecayIdealTest decay_ideal_test(const Semigroup& sg, const Matrix& a, const Projection& r_o,
                                const AsymptoticOptions& opts, const Tolerances& tol) {
  require_same_dim(a, r_o.matrix(), "decay_ideal_test");
  if (a.rows() != sg.dim()) throw Error(ErrorKind::DimMismatch, "operator and model dimensions differ");
  return decay_with(sg.propagator(opts.horizon, Picture::Heisenberg), a, r_o, opts, tol);
}

std::vector<DecayIdealTest> decay_ideal_basis(const Semigroup& sg, const Projection& r_o,
                                              const AsymptoticOptions& opts,
                                              const Tolerances& tol) {
  const int d = sg.dim();
  const Superoperator alpha_t = sg.propagator(opts.horizon, Picture::Heisenberg);
  std::vector<DecayIdealTest> out;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) out.push_back(decay_with(alpha_t, matrix_unit(d, i, j), r_o, opts, tol));
  }
  return out;
}

// ---------------------------------------------------------------------------

double asymptotic_equivalence_check(const Semigroup& sg, const Matrix& a, const Projection& r_o,
                                    double horizon) {
  require_same_dim(a, r_o.matrix(), "asymptotic_equivalence_check");
  const Matrix rest = a - r_o.matrix() * a * r_o.matrix();
  return op_norm(sg.heisenberg(rest, horizon));
}

std::vector<double> asymptotic_equivalence_profile(const Semigroup& sg, const Matrix& a,
                                                   const Projection& r_o,
                                                   const std::vector<double>& times) {
  std::vector<double> out(times.size());
  kernels::for_each_index(static_cast<int>(times.size()), [&](int k) {
    out[k] = asymptotic_equivalence_check(sg, a, r_o, times[k]);
  });
  return out;
}

// ---------------------------------------------------------------------------

DensityMatrix cesaro_mean(const LindbladGenerator& gen, const DensityMatrix& rho, double horizon,
                          int grid_steps, const Tolerances& tol) {
  return cesaro_mean(Semigroup(gen), rho, horizon, grid_steps, tol);
}

DensityMatrix cesaro_mean(const Semigroup& sg, const DensityMatrix& rho, double horizon,
                          int grid_steps, const Tolerances& tol) {
  if (!(horizon > 0.0)) throw Error(ErrorKind::ValidationError, "Cesaro horizon must be positive");
  if (rho.dim() != sg.dim()) throw Error(ErrorKind::DimMismatch, "state and model dimensions differ");
  const Matrix& s = sg.base(Picture::Schrodinger).matrix;
  Vector v = vec(rho.matrix());
  Vector sum;
  if (sg.is_discrete()) {
    const std::int64_t n = std::max<std::int64_t>(1, sg.steps(horizon));
    sum = Vector::Zero(v.size());
    for (std::int64_t k = 0; k < n; ++k) {
      sum += v;
      v = s * v;
    }
    sum /= static_cast<double>(n);
  } else {
    if (grid_steps < 2) throw Error(ErrorKind::ValidationError, "grid_steps must be at least 2");
    const Matrix step = matrix_exp((horizon / grid_steps) * s);
    sum = 0.5 * v;
    for (int k = 1; k <= grid_steps; ++k) {
      v = step * v;
      sum += (k == grid_steps ? 0.5 : 1.0) * v;
    }
    sum /= static_cast<double>(grid_steps);
  }
  return normalised_state(unvec(sum, sg.dim()), tol);
}

// ---------------------------------------------------------------------------

MinimalityCertificate minimality_certificate(const Semigroup& sg, const Projection& r_o,
                                             const EnclosureDecomposition& decomposition,
                                             int trials, const AsymptoticOptions& opts,
                                             const Tolerances& tol) {
  const int d = sg.dim();
  if (r_o.dim() != d) throw Error(ErrorKind::DimMismatch, "r_o and model dimensions differ");
  const Superoperator alpha_t = sg.propagator(opts.horizon, Picture::Heisenberg);
  const Matrix one = Matrix::Identity(d, d);

  MinimalityCertificate cert;
  for (const Projection& q : decomposition.minimal_projections) {
    const Matrix img = hermitize(alpha_t.apply(r_o.matrix() - q.matrix()));
    EnclosureWitness w{q, hermitian_eig(img, tol).values};
    w.distance_from_one = 1.0 - w.spectrum(0);
    cert.witnesses.push_back(std::move(w));
  }

  // Draws: uniform projections, projections above r_o, and projections that
  // drop part of r_o while adding transient directions.
  Rng rng(opts.seed);
  const Projection transient = r_o.complement();
  std::vector<Projection> draws;
  for (int k = 0; k < trials; ++k) {
    switch (k % 3) {
      case 0:
        draws.push_back(rng.projection(d, rng.uniform_int(1, d)));
        break;
      case 1: {
        const int extra = rng.uniform_int(0, transient.rank());
        const Matrix add = transient.basis() * rng.isometry(transient.rank(), extra);
        const std::array<Projection, 2> pair{r_o, Projection::onto_span(add, d, tol)};
        draws.push_back(proj_supremum(pair, tol));
        break;
      }
      default: {
        const int keep = r_o.rank() == 0 ? 0 : rng.uniform_int(0, r_o.rank() - 1);
        const int add = rng.uniform_int(0, transient.rank());
        Matrix cols(d, keep + add);
        if (keep > 0) cols.leftCols(keep) = r_o.basis() * rng.isometry(r_o.rank(), keep);
        if (add > 0) cols.rightCols(add) = transient.basis() * rng.isometry(transient.rank(), add);
        draws.push_back(Projection::onto_span(cols, d, tol));
        break;
      }
    }
  }

  std::vector<double> deviation(draws.size());
  std::vector<double> deficit(draws.size());
  kernels::for_each_index(static_cast<int>(draws.size()), [&](int k) {
    deviation[k] = op_norm(alpha_t.apply(draws[k].matrix()) - one);
    deficit[k] = std::max(0.0, -min_eigenvalue(draws[k].matrix() - r_o.matrix(), tol));
  });

  cert.trials = trials;
  for (std::size_t k = 0; k < draws.size(); ++k) {
    if (deviation[k] > opts.decay_tol) continue;
    ++cert.near_limit;
    cert.worst_deficit = std::max(cert.worst_deficit, deficit[k]);
    if (deficit[k] > 10.0 * tol.atol) ++cert.violations;
  }
  if (cert.violations > 0) {
    throw Error(ErrorKind::TheoremViolation,
                std::to_string(cert.violations) +
                    " projections have orbits tending to 1 without dominating r_o");
  }
  return cert;
}

std::optional<Projection> search_limit_without_subharmonicity(const Semigroup& sg,
                                                              const Projection& r_o, int trials,
                                                              const AsymptoticOptions& opts,
                                                              const Tolerances& tol) {
  const int d = sg.dim();
  const Projection transient = r_o.complement();
  // Above r_o the orbit tends to 1; strictly between r_o and 1 there must be room.
  if (transient.rank() < 2) return std::nullopt;
  const Superoperator alpha_t = sg.propagator(opts.horizon, Picture::Heisenberg);
  Rng rng(opts.seed);
  for (int k = 0; k < trials; ++k) {
    const int extra = rng.uniform_int(1, transient.rank() - 1);
    const Matrix add = transient.basis() * rng.isometry(transient.rank(), extra);
    const std::array<Projection, 2> pair{r_o, Projection::onto_span(add, d, tol)};
    Projection p = proj_supremum(pair, tol);
    const double dev = op_norm(alpha_t.apply(p.matrix()) - Matrix::Identity(d, d));
    if (dev <= opts.decay_tol && invariance_leak(sg, p) > 10.0 * tol.atol) return p;
  }
  return std::nullopt;
}

double suggested_horizon(const Semigroup& sg, double factor, const Tolerances& tol) {
  const double gap = sg.spectral_gap(tol);
  if (!std::isfinite(gap)) return 1.0;
  const double t = 1.5 * -std::log(factor) / gap;
  return sg.is_discrete() ? std::ceil(t) : t;
}

}  // namespace qds
