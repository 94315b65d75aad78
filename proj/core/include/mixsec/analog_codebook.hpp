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

#ifndef MIXSEC_ANALOG_CODEBOOK_HPP
#define MIXSEC_ANALOG_CODEBOOK_HPP

#include "mixsec/link_metrics.hpp"

namespace mixsec
{
    // Fixed analog beamformer F_A (N x N_RF):
    //   columns [0, M)        far-field steering towards each IR LoS angle
    //   columns [M, M + G)    steering towards each ER LoS path (near-field focusing, or far-field
    //                         steering when the ER sits in the far field); ERs are reused cyclically when G > K
    //   columns [M + G, N_RF) c / |c| element-wise, c = sum_m a(theta_m)
    // Throws std::invalid_argument when M + G > N_RF or G > 0 without any ER.
    cmat build_analog(const scenario &scn);

    // Element-wise c / |c|; entries with |c_n| < 1e-12 become 1
    cvec unit_modulus_normalize(const cvec &c);

    // Fully-digital stage: identity analog matrix of size n, unit-modulus check disabled
    hybrid_beamformer identity_analog(int n);

} // namespace mixsec

#endif
