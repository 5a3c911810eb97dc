// Copyright 2026 The qbattery Authors
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


#include <benchmark/benchmark.h>

#include "qbattery/charging.hpp"
#include "qbattery/dephasing.hpp"
#include "qbattery/metrics.hpp"
#include "qbattery/thermal.hpp"

namespace {

const qb::BatteryParams kParams{2.0, 2.0, 1.0, 1.0};

void BM_HermitianEigen(benchmark::State& state) {
    const qb::ComplexMatrix h = qb::battery_hamiltonian(kParams);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qb::hermitian_eigen(h));
    }
}
BENCHMARK(BM_HermitianEigen);

void BM_GibbsNumeric(benchmark::State& state) {
    const auto spec = qb::ThermalSpec::from_temperature(0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qb::gibbs_numeric(kParams, spec));
    }
}
BENCHMARK(BM_GibbsNumeric);

void BM_GibbsClosedForm(benchmark::State& state) {
    const auto spec = qb::ThermalSpec::from_temperature(0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qb::gibbs_closed_form(kParams, spec));
    }
}
BENCHMARK(BM_GibbsClosedForm);

void BM_TrajectoryWithMetrics(benchmark::State& state) {
    const auto rho_t = qb::gibbs_numeric(kParams, qb::ThermalSpec::from_temperature(0.5)).rho;
    const auto mode = static_cast<qb::EvolutionMode>(state.range(0));
    const qb::ComplexMatrix h = qb::battery_hamiltonian(kParams);
    const qb::ComplexMatrix g = qb::generator(kParams, {1.0}, mode);
    for (auto _ : state) {
        const auto traj = qb::trajectory(rho_t, kParams, {1.0}, mode, 10.0, 1001);
        double acc = 0.0;
        for (const auto& rho : traj.states) {
            acc += qb::stored_work(rho, rho_t, h) + qb::instantaneous_power(rho, g, h) + qb::l1_coherence(rho);
        }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_TrajectoryWithMetrics)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SubspaceRk4(benchmark::State& state) {
    const auto dp = qb::DephasingParams::symmetric(0.5);
    const auto d = qb::effective_coupling(kParams, dp);
    const int n = qb::required_steps(20.0, qb::max_subspace_step(d, dp));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qb::integrate_subspace(qb::SubspaceState{}, d, dp, 20.0, n));
    }
}
BENCHMARK(BM_SubspaceRk4)->Unit(benchmark::kMillisecond);

void BM_Lindblad(benchmark::State& state) {
    const auto dp = qb::DephasingParams::symmetric(0.5, 1.0, qb::RateConvention::FullLindblad);
    const int n = qb::required_steps(20.0, qb::max_lindblad_step(kParams, dp));
    const auto rho0 = qb::DensityMatrix::basis_state(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qb::integrate_lindblad(rho0, kParams, dp, 20.0, n));
    }
}
BENCHMARK(BM_Lindblad)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
