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

// Command-line front end: single runs and the three parameter sweeps, CSV on output

#include "mixsec/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace
{
    struct common_args
    {
        std::string config;
        std::string out = "-";
        std::string scale = "paper";
        std::string scheme;
        std::string receiver_type;
        long long seed = -1;
        int trials = 0;
        int workers = 1;
        bool timing = false;
        std::vector<double> grid;
        bool absolute_q0 = false;
    };

    void add_common(CLI::App *sub, common_args &a, bool with_grid)
    {
        sub->add_option("--config", a.config, "JSON config file (absent keys keep the preset)")->check(CLI::ExistingFile);
        sub->add_option("--out", a.out, "CSV output path, '-' for stdout");
        sub->add_option("--scale", a.scale, "Preset: desk (N=32) or paper (N=128)")->check(CLI::IsMember({"desk", "paper"}));
        sub->add_option("--scheme", a.scheme, "proposed | fully_digital | no_an | full_vr | ff_baseline");
        sub->add_option("--receiver-type", a.receiver_type, "type_I | type_II");
        sub->add_option("--seed", a.seed, "Master seed")->check(CLI::NonNegativeNumber);
        sub->add_option("--trials", a.trials, "Monte-Carlo trials per grid point")->check(CLI::PositiveNumber);
        sub->add_option("--workers", a.workers, "Concurrent trial workers")->check(CLI::PositiveNumber);
        sub->add_flag("--timing", a.timing, "Write measured wall_ms instead of 0");
        if (with_grid)
            sub->add_option("--grid", a.grid, "Comma separated grid values")->delimiter(',');
    }

    mixsec::experiment_config load(const common_args &a)
    {
        mixsec::experiment_config cfg = a.scale == "desk" ? mixsec::desk_config() : mixsec::paper_config();
        if (!a.config.empty())
            cfg = mixsec::parse_config(a.config, cfg);
        if (!a.scheme.empty())
            cfg.scheme = mixsec::parse_scheme(a.scheme);
        if (!a.receiver_type.empty())
            cfg.receiver_type = mixsec::parse_receiver_type(a.receiver_type);
        if (a.seed >= 0)
            cfg.master_seed = static_cast<std::uint64_t>(a.seed);
        if (a.trials > 0)
            cfg.trials = a.trials;
        cfg.validate();
        return cfg;
    }

    std::vector<double> default_grid(mixsec::sweep_kind kind, const mixsec::experiment_config &cfg)
    {
        switch (kind)
        {
        case mixsec::sweep_kind::q0: return {0.1, 0.3, 0.5, 0.7};
        case mixsec::sweep_kind::vr_size:
        {
            std::vector<double> g;
            for (int d : {8, 4, 2, 1})
                if (cfg.n_antennas / d >= 1)
                    g.push_back(cfg.n_antennas / d);
            return g;
        }
        case mixsec::sweep_kind::ir_angle:
        {
            std::vector<double> g;
            for (int i = 0; i < 17; ++i)
                g.push_back(-1.6 + 0.2 * i);
            return g;
        }
        case mixsec::sweep_kind::none: break;
        }
        return {0.0};
    }

    int execute(const common_args &a, mixsec::sweep_kind kind)
    {
        const auto cfg = load(a);
        const auto grid = kind == mixsec::sweep_kind::none ? std::vector<double>{0.0}
                          : a.grid.empty()                ? default_grid(kind, cfg)
                                                          : a.grid;
        mixsec::sweep_options opts;
        opts.workers = a.workers;
        opts.q0_as_fraction = !a.absolute_q0;
        const auto records = mixsec::run_sweep(cfg, kind, grid, cfg.trials, opts);

        if (a.out == "-")
            mixsec::write_csv(records, std::cout, a.timing);
        else
            mixsec::write_csv(records, a.out, a.timing);

        int failed = 0;
        for (const auto &r : records)
            failed += r.status == "infeasible" || r.status == "solver_failure";
        for (const auto &s : mixsec::summarize(records))
            std::fprintf(stderr, "%s = %-10.4g mean WSSR %.4f +- %.4f bps/Hz (%d/%d ok)\n", mixsec::to_string(kind).c_str(),
                         s.value, s.mean, s.std_error, s.n_ok, s.n_total);
        // A single configuration that cannot be solved is an error; sweeps only fail when nothing succeeded
        if (failed > 0 && (kind == mixsec::sweep_kind::none || failed == static_cast<int>(records.size())))
            return 3;
        return 0;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"mixsec - secure hybrid beamforming for mixed near-/far-field SWIPT"};
    app.require_subcommand(1);

    common_args run_a, q0_a, vr_a, ang_a;
    auto *run = app.add_subcommand("run", "Repeated runs of one configuration");
    add_common(run, run_a, false);
    auto *q0 = app.add_subcommand("sweep-q0", "Sweep the energy target");
    add_common(q0, q0_a, true);
    q0->add_flag("--absolute", q0_a.absolute_q0, "Grid values are watts instead of fractions of the max harvestable energy");
    auto *vr = app.add_subcommand("sweep-vr", "Sweep the visibility region size");
    add_common(vr, vr_a, true);
    auto *ang = app.add_subcommand("sweep-angle", "Sweep the IR angle in the IR-angle geometry");
    add_common(ang, ang_a, true);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (run->parsed())
            return execute(run_a, mixsec::sweep_kind::none);
        if (q0->parsed())
            return execute(q0_a, mixsec::sweep_kind::q0);
        if (vr->parsed())
            return execute(vr_a, mixsec::sweep_kind::vr_size);
        return execute(ang_a, mixsec::sweep_kind::ir_angle);
    }
    catch (const mixsec::config_error &e)
    {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    }
    catch (const mixsec::infeasible_scenario &e)
    {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return 3;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
