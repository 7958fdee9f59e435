// Copyright 2026 The qetsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "qet/hamiltonian.hpp"
#include "qet/noise.hpp"
#include "qet/passivity.hpp"
#include "qet/protocols.hpp"
#include "qet/random.hpp"

namespace {

const qet::ModelParams kReference{1.0, 0.4, 0.2};

void BM_HermitianEig(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto dim = static_cast<std::size_t>(state.range(0));
    const auto rho = qet::random_density_matrix(dim, rng);
    for (auto _ : state) benchmark::DoNotOptimize(qet::hermitian_eig(rho));
}
BENCHMARK(BM_HermitianEig)->Arg(2)->Arg(4)->Arg(8);

void BM_MinimalQet(benchmark::State& state) {
    const auto fb = qet::optimal_feedback(kReference);
    for (auto _ : state) benchmark::DoNotOptimize(qet::run_minimal_qet(kReference, fb));
}
BENCHMARK(BM_MinimalQet);

void BM_UnitaryQet(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(qet::run_unitary_qet(kReference));
}
BENCHMARK(BM_UnitaryQet);

void BM_NoisyQetPerGate(benchmark::State& state) {
    const qet::NoiseParams np;
    for (auto _ : state) benchmark::DoNotOptimize(qet::noisy_unitary_qet(kReference, np));
}
BENCHMARK(BM_NoisyQetPerGate);

void BM_SlpProbe(benchmark::State& state) {
    const auto rho = qet::ComplexMatrix::projector(qet::ground_state(kReference));
    const auto budget = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qet::slp_probe(kReference, rho, budget, 7));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SlpProbe)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
