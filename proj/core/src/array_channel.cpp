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

#include "mixsec/array_channel.hpp"
#include "mixsec/config.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace mixsec
{
    void scenario::validate() const
    {
        const int M = n_irs();
        if (n_rf < 1)
            throw std::invalid_argument("scenario: n_rf must be positive");
        if (an_streams < 0)
            throw std::invalid_argument("scenario: an_streams must be non-negative");
        if (M + an_streams > n_rf)
            throw std::invalid_argument("scenario: M + G must not exceed N_RF");
        if (static_cast<int>(weights.size()) != M)
            throw std::invalid_argument("scenario: one weight per information receiver required");
        for (double w : weights)
            if (!(w >= 0.0))
                throw std::invalid_argument("scenario: weights must be non-negative");
        if (!(pmax > 0.0) || !(q0 >= 0.0) || !(xi > 0.0 && xi <= 1.0))
            throw std::invalid_argument("scenario: pmax > 0, q0 >= 0 and xi in (0,1] required");
        for (const auto *group : {&ers, &irs})
            for (const auto &u : *group)
            {
                if (!(u.noise_power > 0.0))
                    throw std::invalid_argument("scenario: noise powers must be positive");
                if (u.channel.size() != geometry.n_antennas)
                    throw std::invalid_argument("scenario: channel length differs from the antenna count");
            }
    }

    array_geometry build_geometry(int n_antennas, double carrier_freq_hz)
    {
        if (n_antennas < 1)
            throw std::invalid_argument("build_geometry: n_antennas must be at least 1");
        if (!(carrier_freq_hz > 0.0) || !std::isfinite(carrier_freq_hz))
            throw std::invalid_argument("build_geometry: carrier frequency must be positive");

        array_geometry g;
        g.n_antennas = n_antennas;
        g.wavelength = speed_of_light / carrier_freq_hz;
        g.spacing = 0.5 * g.wavelength;
        g.aperture = double(n_antennas - 1) * g.spacing;
        g.rayleigh_dist = 2.0 * g.aperture * g.aperture / g.wavelength;
        g.fresnel_dist = 0.62 * std::sqrt(g.aperture * g.aperture * g.aperture / g.wavelength);
        g.offsets.resize(n_antennas);
        for (int n = 0; n < n_antennas; ++n)
            g.offsets[n] = double(2 * n - n_antennas + 1) / 2.0;
        return g;
    }

    cvec ff_steering(const array_geometry &geom, double angle)
    {
        const double s = std::sin(angle);
        cvec a(geom.n_antennas);
        for (int n = 0; n < geom.n_antennas; ++n)
            a[n] = std::polar(1.0, pi * double(n) * s);
        return a;
    }

    std::vector<double> nf_element_distances(const array_geometry &geom, double angle, double dist)
    {
        if (!(dist > 0.0))
            throw std::invalid_argument("nf_element_distances: distance must be positive");
        const double s = std::sin(angle);
        std::vector<double> r(geom.n_antennas);
        for (int n = 0; n < geom.n_antennas; ++n)
        {
            const double y = geom.offsets[n] * geom.spacing;
            r[n] = std::sqrt(dist * dist + y * y - 2.0 * dist * y * s);
        }
        return r;
    }

    cvec nf_steering(const array_geometry &geom, double angle, double dist)
    {
        const auto r = nf_element_distances(geom, angle, dist);
        const double s = std::sin(angle);
        const double k = 2.0 * pi / geom.wavelength;
        cvec b(geom.n_antennas);
        for (int n = 0; n < geom.n_antennas; ++n)
        {
            // r_n - r without cancellation: (r_n^2 - r^2) / (r_n + r)
            const double y = geom.offsets[n] * geom.spacing;
            const double delta = (y * y - 2.0 * dist * y * s) / (r[n] + dist);
            b[n] = std::polar(1.0, -k * delta);
        }
        return b;
    }

    cvec visibility_vector(const array_geometry &geom, const std::vector<int> &vr)
    {
        cvec t = cvec::Zero(geom.n_antennas);
        for (int n : vr)
        {
            if (n < 0 || n >= geom.n_antennas)
                throw std::invalid_argument("visibility_vector: antenna index " + std::to_string(n) + " out of range");
            t[n] = 1.0;
        }
        return t;
    }

    cvec synth_channel(const array_geometry &geom, const std::vector<path> &paths)
    {
        if (paths.empty())
            throw std::invalid_argument("synth_channel: at least one path required");
        const auto reg = paths.front().regime;
        for (const auto &p : paths)
            if (p.regime != reg)
                throw std::invalid_argument("synth_channel: paths mix near-field and far-field regimes");

        cvec h = cvec::Zero(geom.n_antennas);
        for (const auto &p : paths)
        {
            if (p.regime == regime::near_field)
                h += p.gain * nf_steering(geom, p.angle, p.distance).cwiseProduct(visibility_vector(geom, p.visibility));
            else
                h += p.gain * ff_steering(geom, p.angle);
        }
        return h * std::sqrt(1.0 / double(paths.size()));
    }

    double free_space_gain(const array_geometry &geom, double distance)
    {
        return geom.wavelength / (4.0 * pi * distance);
    }

    std::vector<std::vector<int>> assign_visibility_regions(int n_antennas, int n_paths, int vr_size, bool allow_overlap)
    {
        if (vr_size < 1 || vr_size > n_antennas)
            throw config_error("vr_size: must lie in [1, n_antennas], got " + std::to_string(vr_size));
        std::vector<std::vector<int>> regions(n_paths);
        if (n_paths == 0)
            return regions;

        const bool fits = static_cast<long>(vr_size) * n_paths <= n_antennas;
        if (!fits && !allow_overlap)
            throw config_error("vr_size: " + std::to_string(n_paths) + " disjoint regions of " +
                               std::to_string(vr_size) + " antennas do not fit into " +
                               std::to_string(n_antennas) + " antennas");

        for (int i = 0; i < n_paths; ++i)
        {
            int start = i * vr_size;
            if (!fits)
                start = n_paths == 1 ? 0 : int(std::lround(double(i) * double(n_antennas - vr_size) / double(n_paths - 1)));
            regions[i].resize(vr_size);
            for (int n = 0; n < vr_size; ++n)
                regions[i][n] = start + n;
        }
        return regions;
    }

    namespace
    {
        constexpr double min_scatterer_separation = 0.05; // [rad] from every user LoS angle

        double draw_scatterer_angle(std::mt19937_64 &rng, const std::vector<double> &user_angles)
        {
            std::uniform_real_distribution<double> angle_dist(-0.5 * pi, 0.5 * pi);
            for (int attempt = 0; attempt < 100000; ++attempt)
            {
                const double a = angle_dist(rng);
                if (a <= -0.5 * pi)
                    continue;
                const bool clear = std::all_of(user_angles.begin(), user_angles.end(), [a](double u)
                                               { return std::abs(a - u) >= min_scatterer_separation; });
                if (clear)
                    return a;
            }
            throw config_error("user positions leave no admissible scatterer angle");
        }

        std::vector<int> all_antennas(int n)
        {
            std::vector<int> v(n);
            for (int i = 0; i < n; ++i)
                v[i] = i;
            return v;
        }

        void resynthesize(scenario &scn)
        {
            for (auto *group : {&scn.ers, &scn.irs})
                for (auto &u : *group)
                    u.channel = synth_channel(scn.geometry, u.paths);
        }
    } // namespace

    scenario generate_scenario(const experiment_config &cfg, std::uint64_t seed)
    {
        cfg.validate();

        scenario scn;
        scn.geometry = build_geometry(cfg.n_antennas, cfg.carrier_ghz * 1e9);
        const auto &geom = scn.geometry;
        const double dr = geom.rayleigh_dist;
        const int K = cfg.n_ers(), M = cfg.n_irs();

        scn.xi = cfg.xi;
        scn.q0 = cfg.q0_watts;
        scn.pmax = cfg.pmax_watts;
        scn.an_streams = cfg.an_streams;
        scn.n_rf = cfg.n_rf;
        scn.weights = cfg.weights;
        scn.receiver_type = cfg.receiver_type;

        std::vector<double> user_angles;
        for (const auto &p : cfg.er_positions)
            user_angles.push_back(p.angle);
        for (const auto &p : cfg.ir_positions)
            user_angles.push_back(p.angle);

        // Draw order is fixed and independent of the VR layout, so sweeps over vr_size stay paired.
        std::mt19937_64 rng(seed);
        std::vector<double> nf_scatterers(cfg.l_er - 1), ff_scatterers(cfg.l_ir - 1);
        for (auto &a : nf_scatterers)
            a = draw_scatterer_angle(rng, user_angles);
        for (auto &a : ff_scatterers)
            a = draw_scatterer_angle(rng, user_angles);

        std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * pi);
        const double nf_scat_dist = cfg.nf_scatterer_dist_over_dr * dr;
        const double ff_scat_dist = cfg.ff_scatterer_dist_over_dr * dr;

        const auto regions = assign_visibility_regions(cfg.n_antennas, K + cfg.l_er - 1, cfg.vr_size, cfg.vr_allow_overlap);
        const double noise = cfg.noise_watts();

        for (int k = 0; k < K; ++k)
        {
            user_channel u;
            u.kind = user_kind::energy_receiver;
            u.noise_power = noise;
            const double r = cfg.er_positions[k].dist_over_dr * dr;
            u.paths.push_back({regime::near_field, cplx(free_space_gain(geom, r), 0.0), cfg.er_positions[k].angle, r, regions[k]});
            for (int l = 0; l < cfg.l_er - 1; ++l)
                u.paths.push_back({regime::near_field, std::polar(free_space_gain(geom, nf_scat_dist), phase_dist(rng)),
                                   nf_scatterers[l], nf_scat_dist, regions[K + l]});
            u.channel = synth_channel(geom, u.paths);
            scn.ers.push_back(std::move(u));
        }

        for (int m = 0; m < M; ++m)
        {
            user_channel u;
            u.kind = user_kind::info_receiver;
            u.noise_power = noise;
            const double r = cfg.ir_positions[m].dist_over_dr * dr;
            u.paths.push_back({regime::far_field, cplx(free_space_gain(geom, r), 0.0), cfg.ir_positions[m].angle, r, {}});
            for (int l = 0; l < cfg.l_ir - 1; ++l)
                u.paths.push_back({regime::far_field, std::polar(free_space_gain(geom, ff_scat_dist), phase_dist(rng)),
                                   ff_scatterers[l], ff_scat_dist, {}});
            u.channel = synth_channel(geom, u.paths);
            scn.irs.push_back(std::move(u));
        }

        scn.validate();
        return scn;
    }

    scenario with_full_visibility(const scenario &scn)
    {
        scenario out = scn;
        const auto all = all_antennas(scn.geometry.n_antennas);
        for (auto *group : {&out.ers, &out.irs})
            for (auto &u : *group)
                for (auto &p : u.paths)
                    if (p.regime == regime::near_field)
                        p.visibility = all;
        resynthesize(out);
        return out;
    }

    scenario with_far_field_ers(const scenario &scn, const std::vector<double> &er_distances, double ff_scatterer_dist)
    {
        if (er_distances.size() != scn.ers.size())
            throw std::invalid_argument("with_far_field_ers: one distance per energy receiver required");
        if (!(ff_scatterer_dist > 0.0))
            throw std::invalid_argument("with_far_field_ers: scatterer distance must be positive");

        scenario out = scn;
        for (std::size_t k = 0; k < out.ers.size(); ++k)
        {
            auto &paths = out.ers[k].paths;
            for (std::size_t l = 0; l < paths.size(); ++l)
            {
                auto &p = paths[l];
                p.regime = regime::far_field;
                p.distance = l == 0 ? er_distances[k] : ff_scatterer_dist;
                if (!(p.distance > 0.0))
                    throw std::invalid_argument("with_far_field_ers: distances must be positive");
                const double phase = std::abs(p.gain) > 0.0 ? std::arg(p.gain) : 0.0;
                p.gain = std::polar(free_space_gain(out.geometry, p.distance), phase);
                p.visibility.clear();
            }
        }
        resynthesize(out);
        return out;
    }

} // namespace mixsec
