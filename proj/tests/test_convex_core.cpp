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

#include "mixsec/convex_core.hpp"
#include "test_support.hpp"

#include <cmath>
#include <memory>

using namespace mixsec;
using namespace mixsec_test;
using Catch::Approx;

// ================================================================================================
// Real embedding
// ================================================================================================

TEST_CASE("Embedding - round trip and isometry")
{
    std::mt19937_64 rng(1);
    const cmat W = random_cmat(rng, 5, 2), V = random_cmat(rng, 5, 3);
    const rvec x = real_embed(W, V);
    REQUIRE(x.size() == 2 * 5 * 5);
    CHECK(x.squaredNorm() == Approx(W.squaredNorm() + V.squaredNorm()).epsilon(1e-14));
    cmat W2, V2;
    real_unembed(x, 5, 2, 3, W2, V2);
    CHECK(W2 == W);
    CHECK(V2 == V);
    CHECK(x[0] == W(0, 0).real());
    CHECK(x[1] == W(0, 0).imag());
}

TEST_CASE("Embedding - Hermitian forms and linear terms")
{
    std::mt19937_64 rng(2);
    for (int draw = 0; draw < 100; ++draw)
    {
        const cmat A = random_cmat(rng, 4, 4);
        const cmat H = A * A.adjoint();
        const cvec z = random_cvec(rng, 4), y = random_cvec(rng, 4);
        const rvec x = real_embed(z);
        const double complex_form = z.dot(H * z).real();
        const double real_form = x.dot(real_embed_hermitian(H) * x);
        CHECK(std::abs(complex_form - real_form) <= 1e-12 * std::max(1.0, std::abs(complex_form)));
        CHECK(real_embed_linear(y).dot(x) == Approx(y.dot(z).real()).epsilon(1e-12).margin(1e-12));
    }
}

// ================================================================================================
// Barrier solver
// ================================================================================================

namespace
{
    constraint affine(int n, std::vector<std::pair<int, double>> coeffs, double constant, const std::string &label)
    {
        constraint c;
        c.linear = rvec::Zero(n);
        for (auto [i, a] : coeffs)
            c.linear[i] = a;
        c.constant = constant;
        c.label = label;
        return c;
    }
} // namespace

TEST_CASE("Solve - exponential constraint, analytic optimum")
{
    // maximize lambda s.t. 2^lambda - 2 <= 0
    convex_subproblem p;
    p.n_vars = 1;
    p.objective = rvec::Ones(1);
    constraint c = affine(1, {}, -2.0, "exp");
    c.kind = constraint_kind::exp_le;
    c.exp_index = 0;
    c.exp_coeff = 1.0;
    p.constraints.push_back(c);
    const auto rep = solve(p, rvec::Constant(1, -3.0));
    CHECK(rep.status == solve_status::optimal);
    CHECK(rep.x[0] == Approx(1.0).margin(1e-6));
    CHECK(rep.max_violation <= 1e-8);
    CHECK(rep.duality_measure <= 1e-6);
}

TEST_CASE("Solve - projection onto the unit ball")
{
    // minimize ||x - a||^2 s.t. ||x||^2 <= 1 with ||a|| = 2, as max -s with ||x - a||^2 <= s
    const int d = 3;
    rvec a(d);
    a << 1.2, -1.6, 0.0;
    convex_subproblem p;
    p.n_vars = d + 1;
    p.objective = rvec::Zero(d + 1);
    p.objective[d] = -1.0;
    auto eye = std::make_shared<const rmat>(rmat::Identity(d, d));

    constraint ball = affine(d + 1, {}, -1.0, "ball");
    ball.kind = constraint_kind::convex_quadratic_le;
    ball.quad.push_back({0, eye});
    p.constraints.push_back(ball);

    constraint epi = affine(d + 1, {{d, -1.0}}, a.squaredNorm(), "epi");
    epi.kind = constraint_kind::convex_quadratic_le;
    epi.quad.push_back({0, eye});
    epi.linear.head(d) = -2.0 * a;
    p.constraints.push_back(epi);

    rvec start = rvec::Zero(d + 1);
    start[d] = 10.0;
    const auto rep = solve(p, start);
    CHECK(rep.status == solve_status::optimal);
    CHECK((rep.x.head(d) - a / 2.0).norm() < 1e-6);
    CHECK(rep.x[d] == Approx(1.0).margin(1e-6));
}

TEST_CASE("Solve - LP with one quadratic constraint against a grid oracle")
{
    // maximize c . x over {x in R^2 : ||x - x0||^2 <= r^2, a . x <= b}
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    for (int inst = 0; inst < 10; ++inst)
    {
        const rvec cvec2 = (rvec(2) << ud(rng), ud(rng)).finished();
        const rvec x0 = (rvec(2) << ud(rng), ud(rng)).finished();
        const double r = 0.5 + 0.5 * std::abs(ud(rng));
        const rvec av = (rvec(2) << ud(rng), ud(rng)).finished();
        const double b = av.dot(x0) + 0.3 * r * av.norm() * ud(rng);

        convex_subproblem p;
        p.n_vars = 2;
        p.objective = cvec2;
        constraint q = affine(2, {}, x0.squaredNorm() - r * r, "disk");
        q.kind = constraint_kind::convex_quadratic_le;
        q.quad.push_back({0, std::make_shared<const rmat>(rmat::Identity(2, 2))});
        q.linear = -2.0 * x0;
        p.constraints.push_back(q);
        constraint h = affine(2, {{0, av[0]}, {1, av[1]}}, -b, "half");
        p.constraints.push_back(h);

        // Strictly feasible start: step from the disk centre away from the half-plane
        rvec start = x0 - 0.5 * r * av / av.norm();
        REQUIRE(h.value(start) < 0.0);
        const auto rep = solve(p, start);
        REQUIRE(rep.status == solve_status::optimal);

        // Boundary oracle: the optimum lies on the circle or on the chord
        double best = -1e300;
        const int n_grid = 200000;
        for (int i = 0; i < n_grid; ++i)
        {
            const double t = 2.0 * pi * i / n_grid;
            const rvec x = x0 + r * (rvec(2) << std::cos(t), std::sin(t)).finished();
            if (av.dot(x) <= b)
                best = std::max(best, cvec2.dot(x));
        }
        const rvec dir = (rvec(2) << -av[1], av[0]).finished() / av.norm();
        const rvec foot = x0 + (b - av.dot(x0)) / av.squaredNorm() * av;
        const double half = std::sqrt(std::max(0.0, r * r - (foot - x0).squaredNorm()));
        for (double s : {-half, half})
            best = std::max(best, cvec2.dot(foot + s * dir));
        CHECK(rep.objective == Approx(best).margin(1e-5));
    }
}

TEST_CASE("Solve - optimality under random feasible perturbations")
{
    // maximize x0 + 2 x1 over the unit disk
    convex_subproblem p;
    p.n_vars = 2;
    p.objective = (rvec(2) << 1.0, 2.0).finished();
    constraint q = affine(2, {}, -1.0, "disk");
    q.kind = constraint_kind::convex_quadratic_le;
    q.quad.push_back({0, std::make_shared<const rmat>(rmat::Identity(2, 2))});
    p.constraints.push_back(q);
    const auto rep = solve(p, rvec::Zero(2));
    REQUIRE(rep.status == solve_status::optimal);
    CHECK(rep.objective == Approx(std::sqrt(5.0)).margin(1e-6));

    std::mt19937_64 rng(6);
    std::normal_distribution<double> nd;
    int tried = 0;
    while (tried < 50)
    {
        rvec dir(2);
        dir << nd(rng), nd(rng);
        const rvec y = rep.x + 1e-3 * dir.normalized();
        if (q.value(y) > 0.0)
            continue;
        ++tried;
        CHECK(p.objective.dot(y) <= rep.objective + 1e-6);
    }
}

TEST_CASE("Solve - deterministic and rejects infeasible starts")
{
    convex_subproblem p;
    p.n_vars = 1;
    p.objective = rvec::Ones(1);
    constraint c = affine(1, {}, -2.0, "exp");
    c.kind = constraint_kind::exp_le;
    c.exp_index = 0;
    c.exp_coeff = 1.0;
    p.constraints.push_back(c);
    const auto r1 = solve(p, rvec::Constant(1, 0.0)), r2 = solve(p, rvec::Constant(1, 0.0));
    CHECK(r1.x == r2.x);
    CHECK(r1.newton_steps == r2.newton_steps);
    CHECK_THROWS_AS(solve(p, rvec::Constant(1, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(solve(p, rvec::Constant(1, 5.0)), std::invalid_argument);
    CHECK_THROWS_AS(solve(p, rvec::Zero(2)), std::invalid_argument);
}

TEST_CASE("Validate - non-PSD block and negative exponential weight")
{
    convex_subproblem p;
    p.n_vars = 2;
    p.objective = rvec::Ones(2);
    constraint q = affine(2, {}, -1.0, "indef");
    q.kind = constraint_kind::convex_quadratic_le;
    q.quad.push_back({0, std::make_shared<const rmat>((rmat(2, 2) << 1.0, 0.0, 0.0, -1.0).finished())});
    p.constraints.push_back(q);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    convex_subproblem e;
    e.n_vars = 1;
    e.objective = rvec::Ones(1);
    constraint c = affine(1, {}, -2.0, "exp");
    c.kind = constraint_kind::exp_le;
    c.exp_index = 0;
    c.exp_coeff = -1.0;
    e.constraints.push_back(c);
    CHECK_THROWS_AS(e.validate(), std::invalid_argument);
}

TEST_CASE("Solve - unconstrained zero objective")
{
    convex_subproblem p;
    p.n_vars = 2;
    p.objective = rvec::Zero(2);
    const auto rep = solve(p, rvec::Ones(2));
    CHECK(rep.status == solve_status::optimal);
}
