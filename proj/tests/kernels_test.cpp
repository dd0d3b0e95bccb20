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

#include <stdexcept>
#include <vector>

#include "qds/kernels.hpp"
#include "qds/models.hpp"
#include "test_util.hpp"

using namespace qds;

TEST_SUITE("kernels") {

TEST_CASE("parallel assemble is bit-identical to the serial reference") {
  Rng rng(21);
  for (int d = 1; d <= 6; ++d) {
    const QuantumChannel ch = random_channel(d, 3, rng);
    const kernels::Action action = [&](const Matrix& a) { return apply_heisenberg(ch, a); };
    const Matrix serial = kernels::assemble(d, action, kernels::Exec::Serial);
    const Matrix parallel = kernels::assemble(d, action, kernels::Exec::Parallel);
    CHECK(serial == parallel);
  }
}

TEST_CASE("assemble reproduces the Kronecker formula") {
  Rng rng(22);
  for (int d = 2; d <= 4; ++d) {
    const QuantumChannel ch = random_channel(d, 2, rng);
    const Matrix assembled =
        kernels::assemble(d, [&](const Matrix& a) { return apply_heisenberg(ch, a); });
    CHECK(test::diff(assembled, to_superoperator(ch, Picture::Heisenberg).matrix) <= 1e-13);

    const StructuredModel m = random_structured_generator(random_layout(d, rng), 2, rng);
    const LindbladGenerator& gen = *m.model.generator();
    const Matrix gen_assembled = kernels::assemble(
        d, [&](const Matrix& a) { return lindblad_apply(gen, a, Picture::Schrodinger); });
    CHECK(test::diff(gen_assembled, to_superoperator(gen, Picture::Schrodinger).matrix) <= 1e-12);
  }
}

TEST_CASE("parallel kron is bit-identical to the serial reference") {
  Rng rng(23);
  const Matrix a = rng.gaussian(7, 5);
  const Matrix b = rng.gaussian(3, 4);
  const Matrix serial = kernels::kron(a, b, kernels::Exec::Serial);
  CHECK(serial == kernels::kron(a, b, kernels::Exec::Parallel));
  CHECK(serial.rows() == 21);
  CHECK(serial.cols() == 20);
  CHECK(serial(3 * 2 + 1, 4 * 3 + 2) == a(2, 3) * b(1, 2));
  CHECK(serial == kron(a, b));
}

TEST_CASE("parallel exp_batch is bit-identical to the serial reference") {
  Rng rng(24);
  const Matrix s = to_superoperator(*fixture("M3").model.generator(), Picture::Heisenberg).matrix;
  const std::vector<double> times{0.0, 0.1, 1.0, 3.5, 30.0};
  const std::vector<Matrix> serial = kernels::exp_batch(s, times, kernels::Exec::Serial);
  const std::vector<Matrix> parallel = kernels::exp_batch(s, times, kernels::Exec::Parallel);
  REQUIRE(serial.size() == times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    CHECK(serial[k] == parallel[k]);
    CHECK(serial[k] == matrix_exp(times[k] * s));
  }
}

TEST_CASE("for_each_index visits every index once and rethrows") {
  std::vector<int> hits(100, 0);
  kernels::for_each_index(100, [&](int i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(kernels::for_each_index(10,
                                          [](int i) {
                                            if (i == 7) throw Error(ErrorKind::InternalError, "boom");
                                          }),
                  Error);
  CHECK(kernels::max_threads() >= 1);
}

}
