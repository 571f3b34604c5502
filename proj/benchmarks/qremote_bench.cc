// Copyright 2026 The qremote Authors
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

#include <vector>

#include "qremote/protocols.hpp"

namespace {

using namespace qrc;

void BM_BidirectionalTeleport(benchmark::State& state) {
    ops::Rng rng(1);
    const auto u = ops::haar_unitary(rng, 2);
    const auto psi = ops::haar_state(rng, 2);
    for (auto _ : state) {
        auto rt = locc::LoccRuntime::enumerating();
        const auto labels = protocols::prepare_bidirectional(rt, psi);
        benchmark::DoNotOptimize(protocols::bidirectional_u_teleport(rt, u, labels.beta));
    }
}
BENCHMARK(BM_BidirectionalTeleport);

void BM_ControlStateTeleport(benchmark::State& state) {
    const auto enc = protocols::ControlEncoding::paulis();
    for (auto _ : state) {
        auto rt = locc::LoccRuntime::enumerating();
        rt.add_qubit(locc::PartyId::Bob, "beta", 1.0, 0.0);
        rt.distribute_bell_pair("ac0", "bc0");
        rt.distribute_bell_pair("ac1", "bc1");
        benchmark::DoNotOptimize(protocols::control_state_teleport(rt, enc, 2, "beta"));
    }
}
BENCHMARK(BM_ControlStateTeleport);

void BM_EntanglementBoundDemo(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(protocols::entanglement_bound_demo());
}
BENCHMARK(BM_EntanglementBoundDemo);

void BM_HermitianEigen(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    ops::Rng rng(2);
    const auto u = ops::haar_unitary(rng, dim).matrix();
    std::vector<linalg::Complex> diag(dim);
    for (std::size_t i = 0; i < dim; ++i) diag[i] = static_cast<double>(i);
    const auto h = u * linalg::CMatrix::diagonal(diag) * u.adjoint();
    for (auto _ : state) benchmark::DoNotOptimize(linalg::hermitian_eigen(h));
}
BENCHMARK(BM_HermitianEigen)->RangeMultiplier(2)->Range(4, 64);

void BM_PartialTrace(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    ops::Rng rng(3);
    std::vector<linalg::Label> labels;
    for (int i = 0; i < n; ++i) labels.push_back("q" + std::to_string(i));
    const auto rho = linalg::DensityOp::from_pure(ops::haar_state(rng, std::size_t{1} << n), labels);
    const std::vector<linalg::Label> keep(labels.begin(), labels.begin() + n / 2);
    for (auto _ : state) benchmark::DoNotOptimize(linalg::partial_trace(rho, keep));
}
BENCHMARK(BM_PartialTrace)->DenseRange(2, 8, 2);

void BM_HaarUnitary(benchmark::State& state) {
    ops::Rng rng(4);
    for (auto _ : state) benchmark::DoNotOptimize(ops::haar_unitary(rng, 2));
}
BENCHMARK(BM_HaarUnitary);

}  // namespace

BENCHMARK_MAIN();
