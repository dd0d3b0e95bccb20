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

#include "qds/kernels.hpp"

#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qds::kernels {

namespace {

void assemble_column(int dim, const Action& action, int col, Matrix& out) {
  const int i = col % dim;
  const int j = col / dim;
  Matrix unit = Matrix::Zero(dim, dim);
  unit(i, j) = 1.0;
  const Matrix image = action(unit);
  out.col(col) = Eigen::Map<const Vector>(image.data(), image.size());
}

void kron_block(const Matrix& a, const Matrix& b, Eigen::Index ij, Matrix& out) {
  const Eigen::Index i = ij % a.rows();
  const Eigen::Index j = ij / a.rows();
  out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
}

}  // namespace

void for_each_index(int n, const std::function<void(int)>& body, Exec exec) {
  if (exec == Exec::Serial) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  // Exceptions may not escape an OpenMP region; keep the first one and rethrow.
  std::exception_ptr failure;
  std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

Matrix assemble(int dim, const Action& action, Exec exec) {
  const int n = dim * dim;
  Matrix out(n, n);
  if (exec == Exec::Serial) {
    for (int col = 0; col < n; ++col) assemble_column(dim, action, col, out);
  } else {
    for_each_index(n, [&](int col) { assemble_column(dim, action, col, out); }, exec);
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b, Exec exec) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  const Eigen::Index blocks = a.rows() * a.cols();
  if (exec == Exec::Serial) {
    for (Eigen::Index ij = 0; ij < blocks; ++ij) kron_block(a, b, ij, out);
  } else {
#pragma omp parallel for schedule(static)
    for (Eigen::Index ij = 0; ij < blocks; ++ij) kron_block(a, b, ij, out);
  }
  return out;
}

std::vector<Matrix> exp_batch(const Matrix& s, std::span<const double> times, Exec exec) {
  std::vector<Matrix> out(times.size());
  for_each_index(static_cast<int>(times.size()),
                 [&](int k) { out[k] = matrix_exp(times[k] * s); }, exec);
  return out;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qds::kernels
