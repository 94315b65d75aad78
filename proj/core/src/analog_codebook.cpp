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

namespace mixsec
{
    cvec unit_modulus_normalize(const cvec &c)
    {
        cvec out(c.size());
        for (Eigen::Index n = 0; n < c.size(); ++n)
        {
            const double mag = std::abs(c[n]);
            out[n] = mag < 1e-12 ? cplx(1.0, 0.0) : c[n] / mag;
        }
        return out;
    }

    cmat build_analog(const scenario &scn)
    {
        const int M = scn.n_irs(), G = scn.an_streams, K = scn.n_ers(), N = scn.geometry.n_antennas;
        if (M + G > scn.n_rf)
            throw std::invalid_argument("build_analog: M + G exceeds the number of RF chains");
        if (G > 0 && K == 0)
            throw std::invalid_argument("build_analog: AN columns need at least one energy receiver");
        if (M < 1)
            throw std::invalid_argument("build_analog: at least one information receiver required");

        cmat fa(N, scn.n_rf);
        cvec c = cvec::Zero(N);
        for (int m = 0; m < M; ++m)
        {
            const auto &los = scn.irs[m].paths.at(0);
            fa.col(m) = ff_steering(scn.geometry, los.angle);
            c += fa.col(m);
        }
        for (int g = 0; g < G; ++g)
        {
            const auto &los = scn.ers[g % K].paths.at(0);
            fa.col(M + g) = los.regime == regime::near_field ? nf_steering(scn.geometry, los.angle, los.distance)
                                                             : ff_steering(scn.geometry, los.angle);
        }
        const cvec tail = unit_modulus_normalize(c);
        for (int i = M + G; i < scn.n_rf; ++i)
            fa.col(i) = tail;
        return fa;
    }

    hybrid_beamformer identity_analog(int n)
    {
        if (n < 1)
            throw std::invalid_argument("identity_analog: size must be at least 1");
        hybrid_beamformer bf;
        bf.analog = cmat::Identity(n, n);
        bf.analog_is_identity = true;
        return bf;
    }

} // namespace mixsec
