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

#include "mixsec/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace mixsec
{
    using json = nlohmann::json;

    void experiment_config::validate() const
    {
        auto fail = [](const std::string &field, const std::string &what)
        { throw config_error(field + ": " + what); };

        if (n_antennas < 1)
            fail("n_antennas", "must be at least 1");
        if (n_rf < 1)
            fail("n_rf", "must be at least 1");
        if (!(carrier_ghz > 0.0))
            fail("carrier_ghz", "must be positive");
        if (ir_positions.empty())
            fail("ir_positions", "at least one information receiver required");
        if (l_er < 1)
            fail("l_er", "must be at least 1");
        if (l_ir < 1)
            fail("l_ir", "must be at least 1");
        if (vr_size < 1 || vr_size > n_antennas)
            fail("vr_size", "must lie in [1, n_antennas]");
        if (!(q0_watts >= 0.0))
            fail("q0_watts", "must be non-negative");
        if (!(pmax_watts > 0.0))
            fail("pmax_watts", "must be positive");
        if (!(xi > 0.0 && xi <= 1.0))
            fail("xi", "must lie in (0, 1]");
        if (!std::isfinite(noise_dbm))
            fail("noise_dbm", "must be finite");
        if (an_streams < 0)
            fail("an_streams", "must be non-negative");
        if (n_irs() + an_streams > n_rf)
            fail("an_streams", "M + G must not exceed n_rf");
        if (static_cast<int>(weights.size()) != n_irs())
            fail("weights", "expected one weight per information receiver");
        for (std::size_t i = 0; i < weights.size(); ++i)
            if (!(weights[i] >= 0.0))
                fail("weights[" + std::to_string(i) + "]", "must be non-negative");
        if (trials < 1)
            fail("trials", "must be at least 1");
        if (!(nf_scatterer_dist_over_dr > 0.0 && nf_scatterer_dist_over_dr < 1.0))
            fail("nf_scatterer_dist_over_dr", "must lie in (0, 1)");
        if (!(ff_scatterer_dist_over_dr > 1.0))
            fail("ff_scatterer_dist_over_dr", "must exceed 1");

        const auto geom = build_geometry(n_antennas, carrier_ghz * 1e9);
        const double fresnel_ratio = geom.rayleigh_dist > 0.0 ? geom.fresnel_dist / geom.rayleigh_dist : 0.0;
        for (std::size_t k = 0; k < er_positions.size(); ++k)
        {
            const double r = er_positions[k].dist_over_dr;
            if (!(r > fresnel_ratio && r < 1.0))
                fail("er_positions[" + std::to_string(k) + "].dist_over_dr",
                     "must lie in (d_F/d_R, 1) = (" + std::to_string(fresnel_ratio) + ", 1)");
        }
        for (std::size_t m = 0; m < ir_positions.size(); ++m)
            if (!(ir_positions[m].dist_over_dr > 1.0))
                fail("ir_positions[" + std::to_string(m) + "].dist_over_dr", "must exceed 1");

        if (scheme == scheme::ff_baseline)
        {
            if (ff_er_dist_over_dr.size() != er_positions.size())
                fail("ff_er_dist_over_dr", "expected one distance per energy receiver");
            for (std::size_t k = 0; k < ff_er_dist_over_dr.size(); ++k)
                if (!(ff_er_dist_over_dr[k] > 1.0))
                    fail("ff_er_dist_over_dr[" + std::to_string(k) + "]", "must exceed 1");
        }
        if (!vr_allow_overlap && long(vr_size) * (n_ers() + l_er - 1) > n_antennas)
            fail("vr_size", "disjoint visibility regions do not fit into the array");
    }

    experiment_config paper_config() { return experiment_config{}; }

    experiment_config desk_config()
    {
        experiment_config c;
        c.n_antennas = 32;
        c.n_rf = 6;
        c.er_positions = {{1.3, 0.25}, {0.0, 0.1}};
        c.ir_positions = {{1.0, 1.1}, {-0.2, 1.3}};
        c.an_streams = 2;
        c.weights = {1.0, 1.0};
        c.vr_size = 10; // floor(N / (K + 1)), three disjoint NF regions
        c.ff_er_dist_over_dr = {1.3, 1.1};
        return c;
    }

    experiment_config ir_angle_config(const experiment_config &base, double ir_angle)
    {
        experiment_config c = base;
        c.er_positions = {{1.6, 0.3}, {0.0, 0.1}, {-1.6, 0.3}};
        c.ir_positions = {{ir_angle, 1.5}};
        c.an_streams = 3;
        c.weights = {1.0};
        c.ff_er_dist_over_dr = {1.3, 1.1, 1.3};
        c.n_rf = std::max(c.n_rf, c.n_irs() + c.an_streams);
        c.vr_size = std::max(1, c.n_antennas / (c.n_ers() + c.l_er - 1));
        return c;
    }

    std::string to_string(mixsec::scheme s)
    {
        switch (s)
        {
        case scheme::proposed: return "proposed";
        case scheme::fully_digital: return "fully_digital";
        case scheme::no_an: return "no_an";
        case scheme::full_vr: return "full_vr";
        case scheme::ff_baseline: return "ff_baseline";
        }
        return "unknown";
    }

    std::string to_string(mixsec::receiver_type t)
    {
        return t == receiver_type::type_I ? "type_I" : "type_II";
    }

    mixsec::scheme parse_scheme(const std::string &s)
    {
        for (auto v : {scheme::proposed, scheme::fully_digital, scheme::no_an, scheme::full_vr, scheme::ff_baseline})
            if (to_string(v) == s)
                return v;
        throw config_error("scheme: unknown value '" + s + "'");
    }

    mixsec::receiver_type parse_receiver_type(const std::string &s)
    {
        if (s == "type_I" || s == "I" || s == "1")
            return receiver_type::type_I;
        if (s == "type_II" || s == "II" || s == "2")
            return receiver_type::type_II;
        throw config_error("receiver_type: unknown value '" + s + "'");
    }

    namespace
    {
        template <typename T>
        T get_as(const json &j, const std::string &field)
        {
            try
            {
                return j.get<T>();
            }
            catch (const json::exception &e)
            {
                throw config_error(field + ": " + e.what());
            }
        }

        std::vector<user_position> get_positions(const json &j, const std::string &field)
        {
            if (!j.is_array())
                throw config_error(field + ": expected an array");
            std::vector<user_position> out;
            for (std::size_t i = 0; i < j.size(); ++i)
            {
                const std::string f = field + "[" + std::to_string(i) + "]";
                const auto &e = j[i];
                if (e.is_array() && e.size() == 2)
                    out.push_back({get_as<double>(e[0], f + "[0]"), get_as<double>(e[1], f + "[1]")});
                else if (e.is_object() && e.contains("angle") && e.contains("dist_over_dr") && e.size() == 2)
                    out.push_back({get_as<double>(e["angle"], f + ".angle"), get_as<double>(e["dist_over_dr"], f + ".dist_over_dr")});
                else
                    throw config_error(f + ": expected [angle, dist_over_dr] or {\"angle\", \"dist_over_dr\"}");
            }
            return out;
        }
    } // namespace

    experiment_config parse_config_text(const std::string &text, const experiment_config &base)
    {
        experiment_config c = base;
        bool blank = text.find_first_not_of(" \t\r\n") == std::string::npos;
        if (blank)
        {
            c.validate();
            return c;
        }

        json j;
        try
        {
            j = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw config_error(std::string("<root>: malformed JSON: ") + e.what());
        }
        if (!j.is_object())
            throw config_error("<root>: expected a JSON object");

        static const std::set<std::string> known = {
            "n_antennas", "n_rf", "carrier_ghz", "er_positions", "ir_positions", "l_er", "l_ir", "vr_size",
            "vr_allow_overlap", "nf_scatterer_dist_over_dr", "ff_scatterer_dist_over_dr", "ff_er_dist_over_dr",
            "q0_watts", "pmax_watts", "xi", "noise_dbm", "an_streams", "weights", "receiver_type", "scheme",
            "trials", "master_seed"};
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!known.count(it.key()))
                throw config_error(it.key() + ": unknown field");

        auto read = [&](const char *key, auto &dst)
        {
            if (j.contains(key))
                dst = get_as<std::decay_t<decltype(dst)>>(j[key], key);
        };
        read("n_antennas", c.n_antennas);
        read("n_rf", c.n_rf);
        read("carrier_ghz", c.carrier_ghz);
        read("l_er", c.l_er);
        read("l_ir", c.l_ir);
        read("vr_size", c.vr_size);
        read("vr_allow_overlap", c.vr_allow_overlap);
        read("nf_scatterer_dist_over_dr", c.nf_scatterer_dist_over_dr);
        read("ff_scatterer_dist_over_dr", c.ff_scatterer_dist_over_dr);
        read("ff_er_dist_over_dr", c.ff_er_dist_over_dr);
        read("q0_watts", c.q0_watts);
        read("pmax_watts", c.pmax_watts);
        read("xi", c.xi);
        read("noise_dbm", c.noise_dbm);
        read("trials", c.trials);
        read("master_seed", c.master_seed);
        if (j.contains("er_positions"))
            c.er_positions = get_positions(j["er_positions"], "er_positions");
        if (j.contains("ir_positions"))
            c.ir_positions = get_positions(j["ir_positions"], "ir_positions");
        if (j.contains("receiver_type"))
            c.receiver_type = parse_receiver_type(get_as<std::string>(j["receiver_type"], "receiver_type"));
        if (j.contains("scheme"))
            c.scheme = parse_scheme(get_as<std::string>(j["scheme"], "scheme"));

        // G follows K and the weights follow M unless given explicitly
        if (j.contains("an_streams"))
            c.an_streams = get_as<int>(j["an_streams"], "an_streams");
        else if (j.contains("er_positions"))
            c.an_streams = c.n_ers();
        if (j.contains("weights"))
            c.weights = get_as<std::vector<double>>(j["weights"], "weights");
        else
            c.weights.assign(c.ir_positions.size(), 1.0);

        c.validate();
        return c;
    }

    experiment_config parse_config(const std::string &path, const experiment_config &base)
    {
        std::ifstream in(path);
        if (!in)
            throw config_error("<file>: cannot open '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_config_text(ss.str(), base);
    }

} // namespace mixsec
