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

#ifndef MIXSEC_CONFIG_HPP
#define MIXSEC_CONFIG_HPP

#include "mixsec/array_channel.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mixsec
{
    enum class scheme
    {
        proposed,      // hybrid beamforming with AN
        fully_digital, // N_RF = N, no analog stage
        no_an,         // hybrid, V = 0
        full_vr,       // hybrid, every NF path sees the whole array
        ff_baseline    // hybrid, ERs moved into the far field
    };

    struct user_position
    {
        double angle = 0.0;        // [rad]
        double dist_over_dr = 1.0; // distance in units of the Rayleigh distance
    };

    struct experiment_config
    {
        int n_antennas = 128;
        int n_rf = 10;
        double carrier_ghz = 30.0;
        std::vector<user_position> er_positions{{1.3, 0.25}, {0.0, 0.1}, {-1.1, 0.3}};
        std::vector<user_position> ir_positions{{1.0, 1.1}, {-0.2, 1.3}};
        int l_er = 2;                  // paths per ER (LoS + shared NF scatterers)
        int l_ir = 3;                  // paths per IR (LoS + shared FF scatterers)
        int vr_size = 32;              // antennas per NF visibility region
        bool vr_allow_overlap = true;
        double nf_scatterer_dist_over_dr = 0.1;
        double ff_scatterer_dist_over_dr = 1.1;
        std::vector<double> ff_er_dist_over_dr{1.3, 1.1, 1.3}; // ER distances for the FF baseline
        double q0_watts = 5e-8;
        double pmax_watts = 1.0;
        double xi = 0.5;
        double noise_dbm = -80.0;
        int an_streams = 3;            // G, defaults to K
        std::vector<double> weights{1.0, 1.0};
        mixsec::receiver_type receiver_type = receiver_type::type_I;
        mixsec::scheme scheme = scheme::proposed;
        int trials = 10;
        std::uint64_t master_seed = 1;

        int n_ers() const { return static_cast<int>(er_positions.size()); }
        int n_irs() const { return static_cast<int>(ir_positions.size()); }
        double noise_watts() const { return dbm_to_watts(noise_dbm); }

        // Throws config_error naming the offending field
        void validate() const;
    };

    // Full-scale parameter set (N = 128, N_RF = 10, K = 3, M = 2)
    experiment_config paper_config();

    // Desk-scale preset: N = 32, N_RF = 6, K = 2, M = 2, G = 2
    experiment_config desk_config();

    // Geometry for the IR-angle study: one IR at 1.5 d_R and three ERs at angles {1.6, 0, -1.6} rad.
    // Array size and RF chains are taken from `base`.
    experiment_config ir_angle_config(const experiment_config &base, double ir_angle);

    // Reads a JSON config file. Absent keys keep the defaults of `base`.
    experiment_config parse_config(const std::string &path, const experiment_config &base = paper_config());

    // Same as parse_config, from JSON text (an empty string yields `base`)
    experiment_config parse_config_text(const std::string &text, const experiment_config &base = paper_config());

    std::string to_string(mixsec::scheme s);
    std::string to_string(mixsec::receiver_type t);
    mixsec::scheme parse_scheme(const std::string &s);
    mixsec::receiver_type parse_receiver_type(const std::string &s);

} // namespace mixsec

#endif
