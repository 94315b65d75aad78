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

#ifndef MIXSEC_SWEEP_H
#define MIXSEC_SWEEP_H

#include "mixsec/config.hpp"
#include "mixsec/sca_engine.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mixsec
{
    enum class sweep_kind
    {
        none,     // plain repeated run of the configured scenario
        q0,       // energy target
        vr_size,  // antennas per visibility region
        ir_angle  // angle of the single IR in the IR-angle geometry
    };

    std::string to_string(sweep_kind k);

    // One CSV row
    struct result_record
    {
        std::string scheme;
        std::string receiver_type;
        std::string sweep_param;
        double sweep_value = 0.0;
        int trial = 0;
        std::uint64_t seed = 0;
        double wssr = 0.0;              // [bps/Hz]
        std::vector<double> rates;      // per-IR secrecy rates [bps/Hz]
        double harvested_watts = 0.0;
        double power_watts = 0.0;
        int iterations = 0;
        double wall_ms = 0.0;
        std::string status;             // ok | ok_clamped | infeasible | solver_failure
    };

    struct sweep_options
    {
        bool q0_as_fraction = true;     // q0 grid values are fractions of the per-trial max harvestable energy
        int workers = 1;                // concurrent trial workers
        solver_options solver;          // seed field is overwritten per trial
    };

    // Per-trial seed, a fixed integer mix of (master seed, sweep kind, trial index)
    std::uint64_t trial_seed(std::uint64_t master_seed, sweep_kind kind, int trial);

    // Scenario for one (grid value, trial). For q0 sweeps in fraction mode the energy target is
    // fraction * max harvestable energy of the hybrid analog stage.
    scenario sweep_scenario(const experiment_config &cfg, sweep_kind kind, double value, std::uint64_t seed,
                            bool q0_as_fraction = true);

    // Runs cfg.scheme for every (grid value, trial). Records come out ordered by (grid index, trial).
    // Invalid grid values throw config_error before any run starts; per-run failures land in `status`.
    std::vector<result_record> run_sweep(const experiment_config &cfg, sweep_kind kind, const std::vector<double> &grid,
                                         int trials, const sweep_options &opts = {});

    // CSV with a fixed column order. wall_ms is written as 0 unless `with_timing` is set,
    // so that reruns produce identical bytes.
    void write_csv(const std::vector<result_record> &records, std::ostream &os, bool with_timing = false);
    void write_csv(const std::vector<result_record> &records, const std::string &path, bool with_timing = false);
    std::vector<result_record> read_csv(std::istream &is);

    // Sample mean and standard error of the WSSR per grid value (successful runs only)
    struct point_summary
    {
        double value = 0.0;
        double mean = 0.0;
        double std_error = 0.0;
        int n_ok = 0;
        int n_total = 0;
    };
    std::vector<point_summary> summarize(const std::vector<result_record> &records);

} // namespace mixsec

#endif
