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

#include <catch2/catch_amalgamated.hpp>

#include "mixsec/analog_codebook.hpp"
#include "mixsec/scheme_bench.hpp"

using namespace mixsec;
using Catch::Approx;

namespace
{
    experiment_config small_config()
    {
        auto cfg = desk_config();
        cfg.n_antennas = 16;
        cfg.vr_size = 5;
        cfg.er_positions = {{1.3, 0.25}, {0.0, 0.2}};
        return cfg;
    }

    void check_feasible(const scheme_result &r)
    {
        CHECK(r.harvested >= r.scn.q0 * (1.0 - 1e-6));
        CHECK(r.power <= r.scn.pmax * (1.0 + 1e-6));
        if (!r.bf.analog_is_identity)
            CHECK(max_modulus_error(r.bf.analog) < 1e-12);
        double sum = 0.0;
        for (std::size_t m = 0; m < r.rates.size(); ++m)
        {
            CHECK(r.rates[m] >= 0.0);
            sum += r.scn.weights[m] * r.rates[m];
        }
        CHECK(r.wssr == Approx(sum).epsilon(1e-12));
        for (std::size_t i = 1; i < r.trace.objective.size(); ++i)
            CHECK(r.trace.objective[i] >= r.trace.objective[i - 1] - 1e-7);
    }
} // namespace

TEST_CASE("Schemes - proposed is deterministic and feasible")
{
    const auto scn = generate_scenario(desk_config(), 1);
    solver_options opts;
    opts.seed = 9;
    const auto a = run_proposed(scn, opts), b = run_proposed(scn, opts);
    CHECK(a.wssr == b.wssr);
    CHECK(a.bf.info == b.bf.info);
    check_feasible(a);
    CHECK(a.scheme == scheme::proposed);
    if (!a.negative_secrecy)
        CHECK(std::abs(a.objective - a.wssr) <= 1e-3);
}

TEST_CASE("Schemes - fully digital uses N RF chains")
{
    const auto scn = generate_scenario(small_config(), 2);
    const auto r = run_fully_digital(scn, solver_options{});
    CHECK(r.scn.n_rf == 16);
    CHECK(r.bf.analog_is_identity);
    CHECK(r.power == Approx(r.bf.info.squaredNorm() + r.bf.an.squaredNorm()).epsilon(1e-12));
    check_feasible(r);
}

TEST_CASE("Schemes - no AN")
{
    const auto scn = generate_scenario(small_config(), 3);
    const auto r = run_no_an(scn, solver_options{});
    CHECK(r.bf.an.isZero(0.0));
    const auto ch = effective_channels(r.scn, r.bf.analog);
    const auto t = quad_terms(ch, r.bf.info, r.bf.an);
    CHECK(t.E.isZero(0.0));
    for (int m = 0; m < scn.n_irs(); ++m)
        CHECK(ir_sinr(r.scn, m, r.bf, receiver_type::type_I) == ir_sinr(r.scn, m, r.bf, receiver_type::type_II));
    check_feasible(r);
}

TEST_CASE("Schemes - no AN reports infeasibility")
{
    auto scn = generate_scenario(small_config(), 4);
    scn.q0 = 1.5 * max_harvestable_energy(scn, build_analog(scn));
    CHECK_THROWS_AS(run_no_an(scn, solver_options{}), infeasible_scenario);
}

TEST_CASE("Schemes - full VR sees the whole array")
{
    const auto scn = generate_scenario(small_config(), 5);
    const auto r = run_full_vr(scn, solver_options{});
    for (const auto &er : r.scn.ers)
        for (const auto &p : er.paths)
            CHECK(visibility_vector(r.scn.geometry, p.visibility).isApprox(cvec::Ones(16)));
    // Full visibility maximizes the NF channel energy for unit gains
    for (int k = 0; k < scn.n_ers(); ++k)
        CHECK(r.scn.ers[k].paths[0].visibility.size() >= scn.ers[k].paths[0].visibility.size());
    check_feasible(r);
}

TEST_CASE("Schemes - far-field baseline")
{
    const auto cfg = small_config();
    const auto scn = generate_scenario(cfg, 6);
    const auto r = run_ff_baseline(scn, solver_options{}, cfg.ff_er_dist_over_dr, cfg.ff_scatterer_dist_over_dr);
    const double dr = scn.geometry.rayleigh_dist;
    for (int k = 0; k < scn.n_ers(); ++k)
    {
        const auto &los = r.scn.ers[k].paths[0];
        CHECK(los.regime == regime::far_field);
        CHECK(los.distance == Approx(cfg.ff_er_dist_over_dr[k] * dr));
        CHECK(std::abs(los.gain) == Approx(free_space_gain(r.scn.geometry, los.distance)));
        for (const auto &p : r.scn.ers[k].paths)
            CHECK(p.visibility.empty());
    }
    check_feasible(r);
    CHECK_THROWS_AS(run_ff_baseline(scn, solver_options{}, {1.3}, 1.1), config_error);
}

TEST_CASE("Schemes - dispatch")
{
    const auto cfg = small_config();
    const auto scn = generate_scenario(cfg, 7);
    CHECK(run_scheme(scheme::no_an, scn, solver_options{}, cfg).scheme == scheme::no_an);
    CHECK(run_scheme(scheme::full_vr, scn, solver_options{}, cfg).scheme == scheme::full_vr);
}
