// SPDX-License-Identifier: Apache-2.0
//
// mixsec - secure hybrid beamforming for mixed near-/far-field SWIPT links
// Copyright (C) 2026 The mixsec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mixsec/analog_codebook.hpp"
#include "mixsec/sca_engine.hpp"
#include "mixsec/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace mixsec;

namespace
{
    scenario desk_scenario(int n_antennas = 32)
    {
        auto cfg = desk_config();
        cfg.n_antennas = n_antennas;
        return generate_scenario(cfg, trial_seed(cfg.master_seed, sweep_kind::none, 0));
    }
} // namespace

static void BM_nf_steering(benchmark::State &state)
{
    const auto geom = build_geometry(static_cast<int>(state.range(0)), 30e9);
    for (auto _ : state)
        benchmark::DoNotOptimize(nf_steering(geom, 0.4, 0.2 * geom.rayleigh_dist));
}
BENCHMARK(BM_nf_steering)->Arg(32)->Arg(128)->Arg(512);

static void BM_generate_scenario(benchmark::State &state)
{
    auto cfg = desk_config();
    cfg.n_antennas = static_cast<int>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_scenario(cfg, seed++));
}
BENCHMARK(BM_generate_scenario)->Arg(32)->Arg(128);

static void BM_subproblem_solve(benchmark::State &state)
{
    const auto scn = desk_scenario();
    const cmat analog = build_analog(scn);
    hybrid_beamformer bf;
    bf.analog = analog;
    std::tie(bf.info, bf.an) = init_digital(scn, analog, 7);
    bf = restore_feasibility(scn, bf);
    bf.info *= std::sqrt(1.0 - 1e-6);
    bf.an *= std::sqrt(1.0 - 1e-6);
    const sca_model model(scn, analog, false, true);
    const rvec x = model.pack(bf.info, bf.an, model.tight_slacks(bf.info, bf.an));
    const auto prob = model.assemble(x);
    const rvec start = model.interior_shift(x);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve(prob, start));
}
BENCHMARK(BM_subproblem_solve)->Unit(benchmark::kMillisecond);

static void BM_sca_solve(benchmark::State &state)
{
    const auto scn = desk_scenario();
    solver_options opts;
    opts.seed = 3;
    for (auto _ : state)
        benchmark::DoNotOptimize(sca_solve(scn, opts));
}
BENCHMARK(BM_sca_solve)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
