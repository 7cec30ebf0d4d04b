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

// Serial reference kernels against their OpenMP twins.

#include <benchmark/benchmark.h>

#include "qds/gkls.hpp"
#include "qds/kernels.hpp"
#include "qds/random.hpp"

namespace {

struct Operands {
  qds::CMatrix a, b, c;
};

Operands make_operands(std::size_t n) {
  qds::Rng rng(42);
  return {qds::random_ginibre(rng, n, n), qds::random_ginibre(rng, n, n), qds::CMatrix(n, n)};
}

void BM_MatmulSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto ops = make_operands(n);
  for (auto _ : state) {
    qds::kernels::matmul_reference(ops.a.data().data(), ops.b.data().data(),
                                   ops.c.data().data(), n, n, n);
    benchmark::DoNotOptimize(ops.c.data().data());
  }
}

void BM_MatmulParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto ops = make_operands(n);
  for (auto _ : state) {
    qds::kernels::matmul_parallel(ops.a.data().data(), ops.b.data().data(),
                                  ops.c.data().data(), n, n, n);
    benchmark::DoNotOptimize(ops.c.data().data());
  }
}

// Per-sample work of the randomized positivity check: a Haar basis and the
// images of its projectors under a d = 4 generator.
qds::Superoperator bench_generator() {
  qds::Rng rng(7);
  std::vector<qds::NoiseTerm> noise;
  for (int k = 0; k < 3; ++k) noise.push_back({1.0, qds::random_ginibre(rng, 4, 4)});
  return qds::compile(qds::GklsGenerator(qds::random_traceless_hermitian(rng, 4), noise));
}

template <bool Parallel>
void BM_BasisSampling(benchmark::State& state) {
  const auto samples = static_cast<std::size_t>(state.range(0));
  const auto l = bench_generator();
  std::vector<double> out(samples);
  auto body = [&](std::size_t i) {
    qds::Rng rng(qds::derive_seed(1, i));
    const auto u = qds::random_unitary(rng, 4);
    double acc = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      qds::CMatrix p(4, 4);
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) p(r, c) = u(r, k) * std::conj(u(c, k));
      acc += qds::frobenius_norm(l.apply(p));
    }
    out[i] = acc;
  };
  for (auto _ : state) {
    if constexpr (Parallel)
      qds::kernels::parallel_for(samples, body);
    else
      qds::kernels::serial_for(samples, body);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_MatmulSerial)->Arg(16)->Arg(64)->Arg(128);
BENCHMARK(BM_MatmulParallel)->Arg(16)->Arg(64)->Arg(128);
BENCHMARK(BM_BasisSampling<false>)->Arg(200);
BENCHMARK(BM_BasisSampling<true>)->Arg(200);

BENCHMARK_MAIN();
