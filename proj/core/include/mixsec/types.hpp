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

#ifndef MIXSEC_TYPES_HPP
#define MIXSEC_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace mixsec
{
    using cplx = std::complex<double>;
    using cvec = Eigen::VectorXcd;
    using cmat = Eigen::MatrixXcd;
    using rvec = Eigen::VectorXd;
    using rmat = Eigen::MatrixXd;

    inline constexpr double speed_of_light = 299792458.0; // [m/s]
    inline constexpr double pi = 3.14159265358979323846;
    inline constexpr double ln2 = 0.69314718055994530942;

    // Bad experiment configuration (schema violation, impossible layout). The message carries the field path.
    class config_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // The energy-harvesting target cannot be met under the power budget.
    class infeasible_scenario : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // An inner convex solve failed; the message names the outer iteration.
    class solver_failure : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Converts dBm to watts
    inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

} // namespace mixsec

#endif
