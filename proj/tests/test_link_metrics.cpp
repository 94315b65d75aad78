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

#include <catch2/catch_amalgamated.hpp>

#include "mixsec/analog_codebook.hpp"
#include "mixsec/link_metrics.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace mixsec;
using namespace mixsec_test;
using Catch::Approx;

namespace
{
    struct instance
    {
        scenario scn;
        hybrid_beamformer bf;
    };

    // N = 4, N_RF = 3, M = 2, K = 2, G = 1 with random channels and beams
    instance small_instance(std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        const int N = 4, NRF = 3;
        std::vector<cvec> her{random_cvec(rng, N, 1e-3), random_cvec(rng, N, 2e-3)};
        std::vector<cvec> hir{random_cvec(rng, N, 1e-3), random_cvec(rng, N, 5e-4)};
        instance in{manual_scenario(N, NRF, her, hir, {1e-9, 2e-9}, {1.5e-9, 1e-9}, 1), {}};
        in.bf.analog = random_unit_modulus(rng, N, NRF);
        in.bf.info = random_cmat(rng, NRF, 2, 0.3);
        in.bf.an = random_cmat(rng, NRF, 1, 0.3);
        return in;
    }

    bool rel_close(double a, double b, double tol = 1e-10)
    {
        return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)) + 1e-300;
    }
} // namespace

// ================================================================================================
// Harvested energy
// ================================================================================================

TEST_CASE("Energy - zero beams harvest nothing")
{
    auto in = small_instance(1);
    in.bf.info.setZero();
    in.bf.an.setZero();
    CHECK(harvested_energy(in.scn, 0, in.bf) == 0.0);
    CHECK(transmit_power(in.bf) == 0.0);
}

TEST_CASE("Energy - scalar oracle on N = 2, N_RF = 1")
{
    const cvec h = (cvec(2) << cplx(0.3, -0.2), cplx(-0.1, 0.4)).finished();
    const cvec hir = (cvec(2) << cplx(0.2, 0.2), cplx(0.5, -0.1)).finished();
    auto scn = manual_scenario(2, 2, {h}, {hir}, {1e-3}, {1e-3}, 1);
    hybrid_beamformer bf;
    bf.analog = (cmat(2, 2) << std::polar(1.0, 0.3), std::polar(1.0, 0.1), std::polar(1.0, -1.2), std::polar(1.0, 2.0)).finished();
    bf.info = (cmat(2, 1) << cplx(0.7, 0.1), cplx(0.0, 0.0)).finished();
    bf.an = (cmat(2, 1) << cplx(-0.2, 0.5), cplx(0.0, 0.0)).finished();

    // Only the first RF chain is driven: F_A w = f_1 w_1
    const cplx f1 = bf.analog(0, 0), f2 = bf.analog(1, 0);
    const cplx sw = std::conj(h[0]) * f1 * bf.info(0, 0) + std::conj(h[1]) * f2 * bf.info(0, 0);
    const cplx sv = std::conj(h[0]) * f1 * bf.an(0, 0) + std::conj(h[1]) * f2 * bf.an(0, 0);
    const double ref = 0.5 * (std::norm(sw) + std::norm(sv));
    CHECK(rel_close(harvested_energy(scn, 0, bf), ref));
}

TEST_CASE("Energy - scaling and index checks")
{
    auto in = small_instance(2);
    const double q = harvested_energy(in.scn, 1, in.bf);
    auto scaled = in.bf;
    scaled.info *= 3.0;
    scaled.an *= 3.0;
    CHECK(rel_close(harvested_energy(in.scn, 1, scaled), 9.0 * q, 1e-13));
    CHECK_THROWS_AS(harvested_energy(in.scn, 2, in.bf), std::invalid_argument);
    CHECK_THROWS_AS(harvested_energy(in.scn, -1, in.bf), std::invalid_argument);
}

// ================================================================================================
// SINRs
// ================================================================================================

TEST_CASE("SINR - brute-force expansion on M = 2, G = 1")
{
    for (std::uint64_t seed = 10; seed < 30; ++seed)
    {
        const auto in = small_instance(seed);
        const auto &F = in.bf.analog;
        const cvec w0 = in.bf.info.col(0), w1 = in.bf.info.col(1), v0 = in.bf.an.col(0);
        for (int k = 0; k < 2; ++k)
        {
            const cvec &h = in.scn.ers[k].channel;
            const double s2 = in.scn.ers[k].noise_power;
            const double ref0 = scalar_gain(h, F, w0) / (scalar_gain(h, F, v0) + scalar_gain(h, F, w1) + s2);
            const double ref1 = scalar_gain(h, F, w1) / (scalar_gain(h, F, v0) + scalar_gain(h, F, w0) + s2);
            CHECK(rel_close(eavesdrop_sinr(in.scn, 0, k, in.bf), ref0));
            CHECK(rel_close(eavesdrop_sinr(in.scn, 1, k, in.bf), ref1));
            const double qref = 0.5 * (scalar_gain(h, F, w0) + scalar_gain(h, F, w1) + scalar_gain(h, F, v0));
            CHECK(rel_close(harvested_energy(in.scn, k, in.bf), qref));
        }
        for (int m = 0; m < 2; ++m)
        {
            const cvec &h = in.scn.irs[m].channel;
            const double s2 = in.scn.irs[m].noise_power;
            const cvec &own = m == 0 ? w0 : w1;
            const cvec &other = m == 0 ? w1 : w0;
            const double t1 = scalar_gain(h, F, own) / (scalar_gain(h, F, v0) + scalar_gain(h, F, other) + s2);
            const double t2 = scalar_gain(h, F, own) / (scalar_gain(h, F, other) + s2);
            CHECK(rel_close(ir_sinr(in.scn, m, in.bf, receiver_type::type_I), t1));
            CHECK(rel_close(ir_sinr(in.scn, m, in.bf, receiver_type::type_II), t2));
            CHECK(t2 >= t1);
        }
    }
}

TEST_CASE("SINR - degenerate beams")
{
    auto in = small_instance(3);
    auto zero_w = in.bf;
    zero_w.info.col(0).setZero();
    CHECK(eavesdrop_sinr(in.scn, 0, 0, zero_w) == 0.0);

    auto no_an = in.bf;
    no_an.an.setZero();
    CHECK(ir_sinr(in.scn, 1, no_an, receiver_type::type_I) == ir_sinr(in.scn, 1, no_an, receiver_type::type_II));

    auto none = in.bf;
    none.info.setZero();
    none.an.setZero();
    CHECK(ir_sinr(in.scn, 0, none, receiver_type::type_I) == 0.0);
    CHECK(ir_sinr(in.scn, 0, none, receiver_type::type_II) == 0.0);

    CHECK_THROWS_AS(ir_sinr(in.scn, 2, in.bf, receiver_type::type_I), std::invalid_argument);
    CHECK_THROWS_AS(eavesdrop_sinr(in.scn, 0, 5, in.bf), std::invalid_argument);
}

TEST_CASE("SINR - single IR without AN has no interference")
{
    std::mt19937_64 rng(4);
    const cvec h = random_cvec(rng, 4, 1e-3), hir = random_cvec(rng, 4, 1e-3);
    auto scn = manual_scenario(4, 2, {h}, {hir}, {1e-9}, {1e-9}, 0);
    hybrid_beamformer bf;
    bf.analog = random_unit_modulus(rng, 4, 2);
    bf.info = random_cmat(rng, 2, 1);
    bf.an = cmat(2, 0);
    CHECK(rel_close(eavesdrop_sinr(scn, 0, 0, bf), scalar_gain(h, bf.analog, bf.info.col(0)) / 1e-9));
}

TEST_CASE("SINR - common rotation of all channels changes nothing")
{
    auto in = small_instance(5);
    auto rot = in.scn;
    const cplx r = std::polar(1.0, 0.77);
    for (auto &u : rot.ers)
        u.channel *= r;
    for (auto &u : rot.irs)
        u.channel *= r;
    for (int m = 0; m < 2; ++m)
    {
        CHECK(rel_close(ir_sinr(rot, m, in.bf, receiver_type::type_I), ir_sinr(in.scn, m, in.bf, receiver_type::type_I)));
        for (int k = 0; k < 2; ++k)
            CHECK(rel_close(eavesdrop_sinr(rot, m, k, in.bf), eavesdrop_sinr(in.scn, m, k, in.bf)));
    }
    for (int k = 0; k < 2; ++k)
        CHECK(rel_close(harvested_energy(rot, k, in.bf), harvested_energy(in.scn, k, in.bf)));
}

// ================================================================================================
// Secrecy rates and WSSR
// ================================================================================================

TEST_CASE("Secrecy - larger eavesdropper determines the rate")
{
    for (std::uint64_t seed = 40; seed < 60; ++seed)
    {
        const auto in = small_instance(seed);
        for (int m = 0; m < 2; ++m)
        {
            const double g = ir_sinr(in.scn, m, in.bf, receiver_type::type_I);
            const double e0 = eavesdrop_sinr(in.scn, m, 0, in.bf), e1 = eavesdrop_sinr(in.scn, m, 1, in.bf);
            const double margin = std::log2(1.0 + g) - std::log2(1.0 + std::max(e0, e1));
            CHECK(secrecy_margin(in.scn, m, in.bf, receiver_type::type_I) == Approx(margin).epsilon(1e-12).margin(1e-14));
            CHECK(secrecy_rate(in.scn, m, in.bf, receiver_type::type_I) == Approx(std::max(0.0, margin)).epsilon(1e-12).margin(1e-14));
            CHECK(secrecy_rate(in.scn, m, in.bf, receiver_type::type_I) >= 0.0);
        }
    }
}

TEST_CASE("Secrecy - equal SINRs clamp to zero, no eavesdropping gives the plain rate")
{
    // Identical IR and ER channels and noise: gamma_e with AN equals the Type-I SINR
    std::mt19937_64 rng(6);
    const cvec h = random_cvec(rng, 4, 1e-3);
    auto scn = manual_scenario(4, 3, {h}, {h}, {1e-9}, {1e-9}, 1);
    hybrid_beamformer bf;
    bf.analog = random_unit_modulus(rng, 4, 3);
    bf.info = random_cmat(rng, 3, 1);
    bf.an = random_cmat(rng, 3, 1);
    CHECK(secrecy_rate(scn, 0, bf, receiver_type::type_I) <= 1e-12);

    auto blind = scn;
    blind.ers[0].channel.setZero();
    const double g = ir_sinr(blind, 0, bf, receiver_type::type_I);
    CHECK(secrecy_rate(blind, 0, bf, receiver_type::type_I) == Approx(std::log2(1.0 + g)).epsilon(1e-13));
}

TEST_CASE("Secrecy - monotone in the eavesdropper channel strength")
{
    auto in = small_instance(7);
    double prev = std::numeric_limits<double>::infinity();
    for (double s : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0})
    {
        auto scn = in.scn;
        for (auto &u : scn.ers)
            u.channel *= s;
        const double r = secrecy_margin(scn, 0, in.bf, receiver_type::type_I);
        CHECK(r <= prev + 1e-12);
        prev = r;
    }
}

TEST_CASE("WSSR - weights")
{
    auto in = small_instance(8);
    in.scn.weights = {0.0, 0.0};
    CHECK(wssr(in.scn, in.bf) == 0.0);
    in.scn.weights = {0.7, 1.3};
    const double ref = 0.7 * secrecy_rate(in.scn, 0, in.bf, in.scn.receiver_type) + 1.3 * secrecy_rate(in.scn, 1, in.bf, in.scn.receiver_type);
    CHECK(wssr(in.scn, in.bf) == Approx(ref).epsilon(1e-14));
    in.scn.receiver_type = receiver_type::type_II;
    CHECK(wssr(in.scn, in.bf) >= ref - 1e-12);
    in.scn.weights = {1.0};
    CHECK_THROWS_AS(wssr(in.scn, in.bf), std::invalid_argument);
}

TEST_CASE("WSSR - single IR equals its secrecy rate")
{
    std::mt19937_64 rng(9);
    const cvec her = random_cvec(rng, 4, 1e-4), hir = random_cvec(rng, 4, 1e-3);
    auto scn = manual_scenario(4, 2, {her}, {hir}, {1e-9}, {1e-9}, 1);
    hybrid_beamformer bf;
    bf.analog = random_unit_modulus(rng, 4, 2);
    bf.info = random_cmat(rng, 2, 1);
    bf.an = random_cmat(rng, 2, 1);
    CHECK(wssr(scn, bf) == secrecy_rate(scn, 0, bf, receiver_type::type_I));
}

// ================================================================================================
// Transmit power and beamformer checks
// ================================================================================================

TEST_CASE("Power - Frobenius norms and homogeneity")
{
    std::mt19937_64 rng(11);
    auto bf = identity_analog(5);
    bf.info = random_cmat(rng, 5, 2);
    bf.an = random_cmat(rng, 5, 3);
    CHECK(transmit_power(bf) == Approx(bf.info.squaredNorm() + bf.an.squaredNorm()).epsilon(1e-14));

    auto in = small_instance(12);
    const double p = transmit_power(in.bf);
    CHECK(p == Approx((in.bf.analog * in.bf.info).squaredNorm() + (in.bf.analog * in.bf.an).squaredNorm()).epsilon(1e-14));
    in.bf.info *= 0.5;
    in.bf.an *= 0.5;
    CHECK(transmit_power(in.bf) == Approx(0.25 * p).epsilon(1e-14));
}

TEST_CASE("Beamformer validation")
{
    auto in = small_instance(13);
    CHECK_NOTHROW(in.bf.validate());
    CHECK(max_modulus_error(in.bf.analog) < 1e-12);
    auto bad = in.bf;
    bad.analog(1, 1) *= 1.01;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.analog_is_identity = true;
    CHECK_NOTHROW(bad.validate());
    auto wrong = in.bf;
    wrong.info = cmat::Zero(2, 2);
    CHECK_THROWS_AS(wrong.validate(), std::invalid_argument);
}
