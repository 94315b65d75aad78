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

#include "mixsec/link_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mixsec
{
    namespace
    {
        void check_index(int i, int n, const char *what)
        {
            if (i < 0 || i >= n)
                throw std::invalid_argument(std::string(what) + " index " + std::to_string(i) + " out of range");
        }

        // Row vector h^H F_A, the per-user effective channel seen by the digital stage
        Eigen::RowVectorXcd effective_row(const cvec &h, const hybrid_beamformer &bf)
        {
            if (bf.analog_is_identity)
                return h.adjoint();
            return h.adjoint() * bf.analog;
        }

        // |row * col|^2, row already carries the conjugate
        double project_sq(const Eigen::RowVectorXcd &row, const cvec &col)
        {
            return std::norm((row * col).value());
        }

        double sum_project_sq(const Eigen::RowVectorXcd &row, const cmat &cols, Eigen::Index skip = -1)
        {
            double s = 0.0;
            for (Eigen::Index c = 0; c < cols.cols(); ++c)
                if (c != skip)
                    s += project_sq(row, cols.col(c));
            return s;
        }
    } // namespace

    void hybrid_beamformer::validate() const
    {
        if (info.rows() != analog.cols() || (an.size() > 0 && an.rows() != analog.cols()))
            throw std::invalid_argument("hybrid_beamformer: digital rows must equal analog columns");
        if (!analog_is_identity && max_modulus_error(analog) > 1e-12)
            throw std::invalid_argument("hybrid_beamformer: analog entries must be unit-modulus");
    }

    double max_modulus_error(const cmat &analog)
    {
        double e = 0.0;
        for (Eigen::Index i = 0; i < analog.size(); ++i)
            e = std::max(e, std::abs(std::abs(analog.data()[i]) - 1.0));
        return e;
    }

    double harvested_energy(const scenario &scn, int k, const hybrid_beamformer &bf)
    {
        check_index(k, scn.n_ers(), "energy receiver");
        const auto row = effective_row(scn.ers[k].channel, bf);
        return scn.xi * (sum_project_sq(row, bf.info) + sum_project_sq(row, bf.an));
    }

    double eavesdrop_sinr(const scenario &scn, int m, int k, const hybrid_beamformer &bf)
    {
        check_index(m, scn.n_irs(), "information receiver");
        check_index(k, scn.n_ers(), "energy receiver");
        const auto row = effective_row(scn.ers[k].channel, bf);
        const double signal = project_sq(row, bf.info.col(m));
        const double interference = sum_project_sq(row, bf.an) + sum_project_sq(row, bf.info, m);
        return signal / (interference + scn.ers[k].noise_power);
    }

    double ir_sinr(const scenario &scn, int m, const hybrid_beamformer &bf, receiver_type rtype)
    {
        check_index(m, scn.n_irs(), "information receiver");
        const auto row = effective_row(scn.irs[m].channel, bf);
        const double signal = project_sq(row, bf.info.col(m));
        double interference = sum_project_sq(row, bf.info, m);
        if (rtype == receiver_type::type_I)
            interference += sum_project_sq(row, bf.an);
        return signal / (interference + scn.irs[m].noise_power);
    }

    double secrecy_margin(const scenario &scn, int m, const hybrid_beamformer &bf, receiver_type rtype)
    {
        double leak = 0.0;
        for (int k = 0; k < scn.n_ers(); ++k)
            leak = std::max(leak, std::log2(1.0 + eavesdrop_sinr(scn, m, k, bf)));
        return std::log2(1.0 + ir_sinr(scn, m, bf, rtype)) - leak;
    }

    double secrecy_rate(const scenario &scn, int m, const hybrid_beamformer &bf, receiver_type rtype)
    {
        return std::max(0.0, secrecy_margin(scn, m, bf, rtype));
    }

    double wssr(const scenario &scn, const hybrid_beamformer &bf)
    {
        if (static_cast<int>(scn.weights.size()) != scn.n_irs())
            throw std::invalid_argument("wssr: one weight per information receiver required");
        double s = 0.0;
        for (int m = 0; m < scn.n_irs(); ++m)
            if (scn.weights[m] != 0.0)
                s += scn.weights[m] * secrecy_rate(scn, m, bf, scn.receiver_type);
        return s;
    }

    double transmit_power(const hybrid_beamformer &bf)
    {
        if (bf.analog_is_identity)
            return bf.info.squaredNorm() + bf.an.squaredNorm();
        double p = (bf.analog * bf.info).squaredNorm();
        if (bf.an.cols() > 0)
            p += (bf.analog * bf.an).squaredNorm();
        return p;
    }

} // namespace mixsec
