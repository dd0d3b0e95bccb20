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

#include "qds/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qds/kernels.hpp"
#include "qds/random.hpp"

namespace qds {

bool HarmonicityReport::conditions_agree() const {
  const std::array<ConditionCheck, 4> all{face_invariance, order, compression, corner};
  return decisive_agreement(all);
}

HarmonicityReport subharmonic_report(const Superoperator& alpha, const Projection& p, int trials,
                                     const Tolerances& tol, std::uint64_t seed) {
  if (alpha.picture != Picture::Heisenberg) {
    throw Error(ErrorKind::ValidationError, "subharmonic_report expects a Heisenberg map");
  }
  const int d = alpha.dim;
  if (p.dim() != d) throw Error(ErrorKind::DimMismatch, "projection and map dimensions differ");
  const Matrix& pm = p.matrix();
  const Matrix pc = Matrix::Identity(d, d) - pm;

  HarmonicityReport rep;

  const Matrix diff = alpha.apply(pm) - pm;
  rep.order_min_eigenvalue = min_eigenvalue(0.5 * (diff + diff.adjoint()), tol);
  rep.order = make_check(std::max(0.0, -rep.order_min_eigenvalue), tol.atol);
  rep.subharmonic = rep.order.holds;

  double comp = 0.0;
  double corner = 0.0;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      const Matrix e = matrix_unit(d, i, j);
      comp = std::max(comp, op_norm(pm * alpha.apply(e) * pm - pm * alpha.apply(pm * e * pm) * pm));
      const Matrix img = alpha.apply(pc * e * pc);
      corner = std::max(corner, op_norm(img - pc * img * pc));
    }
  }
  rep.compression = make_check(comp, tol.atol);
  rep.corner = make_check(corner, tol.atol);

  // Condition (1): nu(rho)(p) = tr(rho alpha(p)) = 1 for rho = p sigma p / tr(p sigma).
  rep.samples = p.rank() == 0 ? 0 : trials;
  std::vector<Matrix> states;
  Rng rng(seed);
  for (int k = 0; k < rep.samples; ++k) {
    const Matrix sigma = rng.density(d);
    const Matrix compressed = pm * sigma * pm;
    states.push_back(compressed / compressed.trace().real());
  }
  const Matrix alpha_p = alpha.apply(pm);
  std::vector<double> violation(states.size(), 0.0);
  kernels::for_each_index(static_cast<int>(states.size()), [&](int k) {
    violation[k] = std::abs(1.0 - (states[k] * alpha_p).trace().real());
  });
  const double worst = violation.empty() ? 0.0 : *std::max_element(violation.begin(), violation.end());
  rep.face_invariance = make_check(worst, tol.atol);
  return rep;
}

HarmonicityReport subharmonic_report(const QuantumChannel& ch, const Projection& p, int trials,
                                     const Tolerances& tol, std::uint64_t seed) {
  if (p.dim() != ch.dim()) throw Error(ErrorKind::DimMismatch, "projection and channel dimensions differ");
  return subharmonic_report(to_superoperator(ch, Picture::Heisenberg), p, trials, tol, seed);
}

// ---------------------------------------------------------------------------

double kraus_leak(const QuantumChannel& ch, const Projection& p) {
  if (p.dim() != ch.dim()) throw Error(ErrorKind::DimMismatch, "projection and channel dimensions differ");
  const Matrix pc = Matrix::Identity(ch.dim(), ch.dim()) - p.matrix();
  double leak = 0.0;
  for (const Matrix& v : ch.kraus()) leak = std::max(leak, op_norm(pc * v * p.matrix()));
  return leak;
}

bool kraus_invariance_test(const QuantumChannel& ch, const Projection& p, const Tolerances& tol) {
  return kraus_leak(ch, p) <= tol.atol;
}

double generator_leak(const LindbladGenerator& gen, const Projection& p) {
  if (p.dim() != gen.dim()) throw Error(ErrorKind::DimMismatch, "projection and generator dimensions differ");
  const Matrix pc = Matrix::Identity(gen.dim(), gen.dim()) - p.matrix();
  double leak = op_norm(pc * gen.effective() * p.matrix());
  for (const Matrix& l : gen.lindblad_ops()) leak = std::max(leak, op_norm(pc * l * p.matrix()));
  return leak;
}

bool is_subharmonic_generator(const LindbladGenerator& gen, const Projection& p,
                              const Tolerances& tol) {
  return generator_leak(gen, p) <= tol.atol;
}

double invariance_leak(const Semigroup& sg, const Projection& p) {
  if (const QuantumChannel* ch = sg.channel()) return kraus_leak(*ch, p);
  return generator_leak(*sg.generator(), p);
}

bool is_subharmonic(const Semigroup& sg, const Projection& p, const Tolerances& tol) {
  return invariance_leak(sg, p) <= tol.atol;
}

bool is_superharmonic(const Semigroup& sg, const Projection& p, const Tolerances& tol) {
  return is_subharmonic(sg, p.complement(), tol);
}

bool is_superharmonic(const QuantumChannel& ch, const Projection& p, const Tolerances& tol) {
  return kraus_invariance_test(ch, p.complement(), tol);
}

bool is_superharmonic(const LindbladGenerator& gen, const Projection& p, const Tolerances& tol) {
  return is_subharmonic_generator(gen, p.complement(), tol);
}

bool subharmonic_order_at(const Semigroup& sg, const Projection& p, double t,
                          const Tolerances& tol) {
  const Matrix img = sg.heisenberg(p.matrix(), t);
  return order_leq(p.matrix(), 0.5 * (img + img.adjoint()), tol);
}

bool superharmonic_order_at(const Semigroup& sg, const Projection& p, double t,
                            const Tolerances& tol) {
  const Matrix img = sg.heisenberg(p.matrix(), t);
  return order_leq(0.5 * (img + img.adjoint()), p.matrix(), tol);
}

// ---------------------------------------------------------------------------

LatticeClosure subharmonic_closure(const Semigroup& sg, std::span<const Projection> family,
                                   const Tolerances& tol) {
  for (std::size_t k = 0; k < family.size(); ++k) {
    const double leak = invariance_leak(sg, family[k]);
    if (leak > tol.atol) {
      throw Error(ErrorKind::FamilyNotSubharmonic,
                  "member " + std::to_string(k) + " leaks " + std::to_string(leak));
    }
  }
  LatticeClosure out{proj_infimum(family, tol), proj_supremum(family, tol)};
  out.inf_leak = invariance_leak(sg, out.inf);
  out.sup_leak = invariance_leak(sg, out.sup);
  out.both = out.inf_leak <= tol.atol && out.sup_leak <= tol.atol;
  return out;
}

LatticeClosure superharmonic_closure(const Semigroup& sg, std::span<const Projection> family,
                                     const Tolerances& tol) {
  for (std::size_t k = 0; k < family.size(); ++k) {
    const double leak = invariance_leak(sg, family[k].complement());
    if (leak > tol.atol) {
      throw Error(ErrorKind::FamilyNotSubharmonic,
                  "member " + std::to_string(k) + " is not super-harmonic (leak " +
                      std::to_string(leak) + ")");
    }
  }
  LatticeClosure out{proj_infimum(family, tol), proj_supremum(family, tol)};
  out.inf_leak = invariance_leak(sg, out.inf.complement());
  out.sup_leak = invariance_leak(sg, out.sup.complement());
  out.both = out.inf_leak <= tol.atol && out.sup_leak <= tol.atol;
  return out;
}

// ---------------------------------------------------------------------------

MohariResult mohari_support_check(const QuantumChannel& ch, const Matrix& x,
                                  const Tolerances& tol) {
  require_same_dim(x, ch.kraus().front(), "mohari_support_check");
  if (!is_psd(x, tol)) throw Error(ErrorKind::NotPSD, "fixed point must be positive");
  const double scale = std::max(1.0, op_norm(x));
  const double drift = op_norm(apply_heisenberg(ch, x) - x);
  if (drift > tol.atol * scale) {
    throw Error(ErrorKind::NotFixedPoint, "||alpha(x) - x|| = " + std::to_string(drift));
  }

  MohariResult out{support_projection(x, tol)};
  const int d = ch.dim();
  const Matrix& s = out.support.matrix();
  const Matrix img = apply_heisenberg(ch, s);
  out.order_deficit = std::max(0.0, -min_eigenvalue(s - 0.5 * (img + img.adjoint()), tol));
  out.superharmonic = out.order_deficit <= tol.atol;

  // The dilation route: pi(s) V z = 0 with z = 1 - s.
  const StinespringDilation dil = stinespring_dilate(ch, tol);
  const Matrix z = Matrix::Identity(d, d) - s;
  out.dilation_residual = op_norm(dil.represent(s) * dil.isometry * z);

  if (!out.superharmonic) {
    throw Error(ErrorKind::TheoremViolation,
                "support of a positive fixed point is not super-harmonic (deficit " +
                    std::to_string(out.order_deficit) + ")");
  }
  return out;
}

}  // namespace qds
