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

#include "mixsec/sweep.hpp"
#include "mixsec/analog_codebook.hpp"
#include "mixsec/scheme_bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace mixsec
{
    std::string to_string(sweep_kind k)
    {
        switch (k)
        {
        case sweep_kind::none: return "none";
        case sweep_kind::q0: return "q0";
        case sweep_kind::vr_size: return "vr_size";
        case sweep_kind::ir_angle: return "ir_angle";
        }
        return "unknown";
    }

    namespace
    {
        std::uint64_t splitmix(std::uint64_t z)
        {
            z += 0x9e3779b97f4a7c15ULL;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }

        experiment_config point_config(const experiment_config &cfg, sweep_kind kind, double value, bool q0_as_fraction)
        {
            experiment_config c = cfg;
            switch (kind)
            {
            case sweep_kind::none:
                break;
            case sweep_kind::q0:
                if (!std::isfinite(value) || value < 0.0)
                    throw config_error("grid: q0 values must be finite and non-negative");
                if (q0_as_fraction && value >= 1.0)
                    throw config_error("grid: q0 fractions must lie in [0, 1)");
                if (!q0_as_fraction)
                    c.q0_watts = value;
                break;
            case sweep_kind::vr_size:
                if (value != std::floor(value) || value < 1.0 || value > c.n_antennas)
                    throw config_error("grid: vr_size must be an integer in [1, n_antennas]");
                c.vr_size = static_cast<int>(value);
                break;
            case sweep_kind::ir_angle:
                if (!(std::abs(value) < pi))
                    throw config_error("grid: ir_angle must lie in (-pi, pi)");
                c = ir_angle_config(cfg, value);
                break;
            }
            c.validate();
            return c;
        }

        std::string fmt(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.9g", v);
            return buf;
        }

        std::vector<std::string> split(const std::string &s, char sep)
        {
            std::vector<std::string> out;
            std::string item;
            std::istringstream is(s);
            while (std::getline(is, item, sep))
                out.push_back(item);
            if (!s.empty() && s.back() == sep)
                out.emplace_back();
            return out;
        }

        const char *csv_header = "scheme,receiver_type,sweep_param,sweep_value,trial,seed,wssr_bps_hz,rates_bps_hz,"
                                 "harvested_watts,power_watts,iterations,wall_ms,status";
    } // namespace

    std::uint64_t trial_seed(std::uint64_t master_seed, sweep_kind kind, int trial)
    {
        const std::uint64_t k = splitmix(splitmix(master_seed) ^ static_cast<std::uint64_t>(kind));
        return splitmix(k ^ static_cast<std::uint64_t>(trial));
    }

    scenario sweep_scenario(const experiment_config &cfg, sweep_kind kind, double value, std::uint64_t seed,
                            bool q0_as_fraction)
    {
        const experiment_config c = point_config(cfg, kind, value, q0_as_fraction);
        scenario scn = generate_scenario(c, seed);
        if (kind == sweep_kind::q0 && q0_as_fraction)
            scn.q0 = value * max_harvestable_energy(scn, build_analog(scn));
        return scn;
    }

    std::vector<result_record> run_sweep(const experiment_config &cfg, sweep_kind kind, const std::vector<double> &grid,
                                         int trials, const sweep_options &opts)
    {
        if (trials < 1)
            throw config_error("trials: must be at least 1");
        for (double v : grid)
            point_config(cfg, kind, v, opts.q0_as_fraction);

        const std::size_t total = grid.size() * static_cast<std::size_t>(trials);
        std::vector<result_record> records(total);
        std::atomic<std::size_t> next{0};

        auto work = [&]
        {
            for (std::size_t i = next++; i < total; i = next++)
            {
                const std::size_t gi = i / trials;
                const int trial = static_cast<int>(i % trials);
                result_record &r = records[i];
                r.scheme = to_string(cfg.scheme);
                r.receiver_type = to_string(cfg.receiver_type);
                r.sweep_param = to_string(kind);
                r.sweep_value = grid[gi];
                r.trial = trial;
                r.seed = trial_seed(cfg.master_seed, kind, trial);

                solver_options so = opts.solver;
                so.seed = r.seed;
                try
                {
                    const scenario scn = sweep_scenario(cfg, kind, grid[gi], r.seed, opts.q0_as_fraction);
                    const auto res = run_scheme(cfg.scheme, scn, so, cfg);
                    r.wssr = res.wssr;
                    r.rates = res.rates;
                    r.harvested_watts = res.harvested;
                    r.power_watts = res.power;
                    r.iterations = res.trace.iterations;
                    r.wall_ms = res.trace.wall_ms;
                    r.status = res.negative_secrecy ? "ok_clamped" : "ok";
                }
                catch (const infeasible_scenario &)
                {
                    r.status = "infeasible";
                }
                catch (const solver_failure &)
                {
                    r.status = "solver_failure";
                }
            }
        };

        const int workers = std::max(1, std::min<int>(opts.workers, static_cast<int>(total)));
        if (workers == 1)
            work();
        else
        {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w)
                pool.emplace_back(work);
            for (auto &t : pool)
                t.join();
        }
        return records;
    }

    void write_csv(const std::vector<result_record> &records, std::ostream &os, bool with_timing)
    {
        os << csv_header << '\n';
        for (const auto &r : records)
        {
            std::string rates;
            for (std::size_t i = 0; i < r.rates.size(); ++i)
                rates += (i ? ";" : "") + fmt(r.rates[i]);
            os << r.scheme << ',' << r.receiver_type << ',' << r.sweep_param << ',' << fmt(r.sweep_value) << ',' << r.trial
               << ',' << r.seed << ',' << fmt(r.wssr) << ',' << rates << ',' << fmt(r.harvested_watts) << ','
               << fmt(r.power_watts) << ',' << r.iterations << ',' << fmt(with_timing ? r.wall_ms : 0.0) << ',' << r.status
               << '\n';
        }
        if (!os)
            throw std::runtime_error("write_csv: stream write failed");
    }

    void write_csv(const std::vector<result_record> &records, const std::string &path, bool with_timing)
    {
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw std::runtime_error("write_csv: cannot open '" + path + "' for writing");
        write_csv(records, os, with_timing);
        os.flush();
        if (!os)
            throw std::runtime_error("write_csv: write to '" + path + "' failed");
    }

    std::vector<result_record> read_csv(std::istream &is)
    {
        std::string line;
        if (!std::getline(is, line) || line != csv_header)
            throw std::runtime_error("read_csv: missing or unexpected header");
        std::vector<result_record> out;
        while (std::getline(is, line))
        {
            if (line.empty())
                continue;
            const auto f = split(line, ',');
            if (f.size() != 13)
                throw std::runtime_error("read_csv: expected 13 columns, got " + std::to_string(f.size()));
            result_record r;
            r.scheme = f[0];
            r.receiver_type = f[1];
            r.sweep_param = f[2];
            r.sweep_value = std::stod(f[3]);
            r.trial = std::stoi(f[4]);
            r.seed = std::stoull(f[5]);
            r.wssr = std::stod(f[6]);
            if (!f[7].empty())
                for (const auto &v : split(f[7], ';'))
                    r.rates.push_back(std::stod(v));
            r.harvested_watts = std::stod(f[8]);
            r.power_watts = std::stod(f[9]);
            r.iterations = std::stoi(f[10]);
            r.wall_ms = std::stod(f[11]);
            r.status = f[12];
            out.push_back(std::move(r));
        }
        return out;
    }

    std::vector<point_summary> summarize(const std::vector<result_record> &records)
    {
        std::vector<point_summary> out;
        std::vector<std::vector<double>> samples;
        for (const auto &r : records)
        {
            std::size_t i = 0;
            while (i < out.size() && out[i].value != r.sweep_value)
                ++i;
            if (i == out.size())
            {
                out.push_back({});
                out.back().value = r.sweep_value;
                samples.emplace_back();
            }
            ++out[i].n_total;
            if (r.status == "ok" || r.status == "ok_clamped")
                samples[i].push_back(r.wssr);
        }
        for (std::size_t i = 0; i < out.size(); ++i)
        {
            const auto &s = samples[i];
            const int n = static_cast<int>(s.size());
            out[i].n_ok = n;
            if (n == 0)
            {
                out[i].mean = std::nan("");
                continue;
            }
            double mean = 0.0;
            for (double v : s)
                mean += v;
            mean /= n;
            double var = 0.0;
            for (double v : s)
                var += (v - mean) * (v - mean);
            out[i].mean = mean;
            out[i].std_error = n > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
        }
        return out;
    }

} // namespace mixsec
