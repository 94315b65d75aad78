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

#ifndef MIXSEC_LINK_METRICS_HPP
#define MIXSEC_LINK_METRICS_HPP

#include "mixsec/array_channel.hpp"

namespace mixsec
{
    // Transmit signal x = F_A (W s + V q) with unit-variance symbols s and AN q.
    struct hybrid_beamformer
    {
        cmat analog;                     // F_A, N x N_RF, unit-modulus unless analog_is_identity
        cmat info;                       // W, N_RF x M
        cmat an;                         // V, N_RF x G (G may be 0)
        bool analog_is_identity = false; // fully-digital mode, N_RF = N

        // Throws std::invalid_argument on dimension mismatch or a non-unit-modulus analog entry
        void validate() const;
    };

    // Largest deviation of |[F_A]_{n,i}| from one
    double max_modulus_error(const cmat &analog);

    // Q_k = xi (sum_m |h_k^H F_A w_m|^2 + sum_g |h_k^H F_A v_g|^2)  [W]
    double harvested_energy(const scenario &scn, int k, const hybrid_beamformer &bf);

    // SINR of ER k eavesdropping on the stream of IR m
    double eavesdrop_sinr(const scenario &scn, int m, int k, const hybrid_beamformer &bf);

    // SINR at IR m. Type I sees the AN in its denominator, Type II cancels it.
    double ir_sinr(const scenario &scn, int m, const hybrid_beamformer &bf, receiver_type rtype);

    // [log2(1 + gamma_m) - max_k log2(1 + gamma^e_{m,k})]^+  [bps/Hz]
    double secrecy_rate(const scenario &scn, int m, const hybrid_beamformer &bf, receiver_type rtype);

    // Same as secrecy_rate without the [.]^+ clamp (may be negative)
    double secrecy_margin(const scenario &scn, int m, const hybrid_beamformer &bf, receiver_type rtype);

    // Weighted sum secrecy rate for scn.receiver_type  [bps/Hz]
    double wssr(const scenario &scn, const hybrid_beamformer &bf);

    // ||F_A W||_F^2 + ||F_A V||_F^2  [W]
    double transmit_power(const hybrid_beamformer &bf);

} // namespace mixsec

#endif
