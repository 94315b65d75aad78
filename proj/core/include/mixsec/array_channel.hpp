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

#ifndef MIXSEC_ARRAY_CHANNEL_HPP
#define MIXSEC_ARRAY_CHANNEL_HPP

#include "mixsec/types.hpp"

#include <cstdint>
#include <vector>

namespace mixsec
{
    struct experiment_config; // config.hpp

    // Uniform linear array along the y-axis, centered at the origin, half-wavelength spacing.
    struct array_geometry
    {
        int n_antennas = 0;             // N
        double wavelength = 0.0;        // Carrier wavelength [m]
        double spacing = 0.0;           // Element spacing d = wavelength / 2 [m]
        double aperture = 0.0;          // D = (N-1) d [m]
        double rayleigh_dist = 0.0;     // 2 D^2 / wavelength [m]
        double fresnel_dist = 0.0;      // 0.62 sqrt(D^3 / wavelength) [m]
        std::vector<double> offsets;    // (2n - N + 1) / 2, element n sits at y = offsets[n] * spacing
    };

    enum class regime
    {
        near_field,
        far_field
    };

    struct path
    {
        mixsec::regime regime = regime::far_field;
        cplx gain{0.0, 0.0};      // Complex path gain, |gain| = wavelength / (4 pi distance)
        double angle = 0.0;       // [rad]
        double distance = 0.0;    // [m], LoS: user distance, NLoS: scatterer distance
        std::vector<int> visibility; // Visible antenna indices (near field only, sorted)
    };

    enum class user_kind
    {
        energy_receiver,
        info_receiver
    };

    struct user_channel
    {
        user_kind kind = user_kind::info_receiver;
        std::vector<path> paths; // LoS first
        cvec channel;            // Synthesized N-vector h
        double noise_power = 0.0; // [W]
    };

    enum class receiver_type
    {
        type_I,  // cannot cancel AN
        type_II  // cancels AN before decoding
    };

    struct scenario
    {
        array_geometry geometry;
        std::vector<user_channel> ers; // K energy receivers (potential eavesdroppers)
        std::vector<user_channel> irs; // M information receivers
        double xi = 0.5;               // Energy harvesting efficiency
        double q0 = 0.0;               // Minimum total harvested energy [W]
        double pmax = 1.0;             // Transmit power budget [W]
        int an_streams = 0;            // G
        int n_rf = 1;                  // RF chains
        std::vector<double> weights;   // alpha_m
        mixsec::receiver_type receiver_type = receiver_type::type_I;

        int n_ers() const { return static_cast<int>(ers.size()); }
        int n_irs() const { return static_cast<int>(irs.size()); }

        // Throws std::invalid_argument when the invariants (M + G <= N_RF, positive powers, ...) are broken
        void validate() const;
    };

    // Builds the ULA geometry; throws std::invalid_argument for non-positive inputs
    array_geometry build_geometry(int n_antennas, double carrier_freq_hz);

    // Far-field steering vector, entry n = exp(j pi n sin(angle))
    cvec ff_steering(const array_geometry &geom, double angle);

    // Distances from every element to a point at (angle, dist) relative to the array center
    std::vector<double> nf_element_distances(const array_geometry &geom, double angle, double dist);

    // Near-field steering vector, entry n = exp(-j 2 pi (r_n - r) / wavelength)
    cvec nf_steering(const array_geometry &geom, double angle, double dist);

    // 0/1 mask of the visibility region; throws std::invalid_argument for out-of-range indices
    cvec visibility_vector(const array_geometry &geom, const std::vector<int> &vr);

    // Multipath channel h = sqrt(1/L) sum_l g_l s_l. All paths must share one regime.
    cvec synth_channel(const array_geometry &geom, const std::vector<path> &paths);

    // Free-space path gain magnitude wavelength / (4 pi r)
    double free_space_gain(const array_geometry &geom, double distance);

    // Visibility regions for `n_paths` near-field paths of `vr_size` antennas each.
    // Contiguous disjoint blocks when they fit, evenly spaced overlapping blocks otherwise.
    std::vector<std::vector<int>> assign_visibility_regions(int n_antennas, int n_paths, int vr_size,
                                                            bool allow_overlap = true);

    // Draws the random scatterers and assembles all user channels. Pure function of (config, seed).
    scenario generate_scenario(const experiment_config &cfg, std::uint64_t seed);

    // Returns a copy where every near-field path sees the whole array (channels resynthesized)
    scenario with_full_visibility(const scenario &scn);

    // Returns a copy where the energy receivers are moved into the far field at the given distances.
    // LoS paths keep their angle; NLoS paths become far-field scatterer paths at `ff_scatterer_dist`.
    scenario with_far_field_ers(const scenario &scn, const std::vector<double> &er_distances,
                                double ff_scatterer_dist);

} // namespace mixsec

#endif
