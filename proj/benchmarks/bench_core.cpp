// Copyright 2026 The twirlkit developers
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

#include <random>

#include <benchmark/benchmark.h>

#include "twirlkit/attractors.hpp"
#include "twirlkit/channels.hpp"
#include "twirlkit/convergence.hpp"
#include "twirlkit/linalg.hpp"
#include "twirlkit/qudit_builder.hpp"
#include "twirlkit/random.hpp"
#include "twirlkit/tolerances.hpp"

namespace {

using namespace twirlkit;

UnitaryEnsemble three_op(int d) {
  ConstructionSpec spec;
  spec.d = d;
  spec.variant = ConstructionVariant::ThreeOp;
  return build_ensemble(spec, false);
}

void bm_build_superoperator(benchmark::State& state) {
  UnitaryEnsemble e = three_op(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_superoperator(e).mat.sum());
}
BENCHMARK(bm_build_superoperator)->Arg(2)->Arg(3)->Arg(4);

void bm_peripheral_spectrum(benchmark::State& state) {
  Superoperator s = build_superoperator(three_op(static_cast<int>(state.range(0))));
  for (auto _ : state)
    benchmark::DoNotOptimize(attractor_space_eig(s).fixed_point_dim);
}
BENCHMARK(bm_peripheral_spectrum)->Arg(2)->Arg(3)->Arg(4);

void bm_fixed_space_nullspace(benchmark::State& state) {
  Superoperator s = build_superoperator(three_op(static_cast<int>(state.range(0))));
  ComplexMatrix shifted =
      s.mat - ComplexMatrix::Identity(s.mat.rows(), s.mat.cols());
  for (auto _ : state)
    benchmark::DoNotOptimize(
        nullspace(shifted, tolerances().nullspace_rel).cols());
}
BENCHMARK(bm_fixed_space_nullspace)->Arg(2)->Arg(3)->Arg(4);

void bm_trace_step(benchmark::State& state) {
  Superoperator s = build_superoperator(three_op(static_cast<int>(state.range(0))));
  ComplexMatrix power = s.mat;
  for (auto _ : state) {
    power = s.mat * power;
    benchmark::DoNotOptimize(power(0, 0));
  }
}
BENCHMARK(bm_trace_step)->Arg(2)->Arg(3)->Arg(4);

void bm_twirl_project(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  std::mt19937_64 eng(5);
  ComplexMatrix u = haar_unitary(d * d, eng);
  DensityMatrix rho(u.col(0) * u.col(0).adjoint());
  for (auto _ : state)
    benchmark::DoNotOptimize(twirl_project(rho).mat().sum());
}
BENCHMARK(bm_twirl_project)->Arg(2)->Arg(3)->Arg(5);

void bm_haar_unitary(benchmark::State& state) {
  std::mt19937_64 eng(7);
  int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(d, eng).sum());
}
BENCHMARK(bm_haar_unitary)->Arg(2)->Arg(3)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
