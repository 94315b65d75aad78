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

#ifndef MIXSEC_CONVEX_CORE_HPP
#define MIXSEC_CONVEX_CORE_HPP

#include "mixsec/types.hpp"

#include <memory>
#include <string>
#include <vector>

namespace mixsec
{
    // ------------------------------------------------------------------------
    // Real embedding of complex beamformers.
    //
    // Columns of W, then columns of V, each stored as interleaved (Re, Im) pairs.
    // A Hermitian form z^H H z becomes x^T R x with R built from 2x2 blocks
    // [[Re H_ij, -Im H_ij], [Im H_ij, Re H_ij]].
    // ------------------------------------------------------------------------

    rvec real_embed(const cmat &W, const cmat &V);
    rvec real_embed(const cvec &z);

    // Inverse of real_embed; `rows` is N_RF, the remaining entries of x (slacks) are ignored
    void real_unembed(const rvec &x, int rows, int w_cols, int v_cols, cmat &W, cmat &V);
    cvec real_unembed(const rvec &x, int offset, int rows);

    // Real symmetric matrix R with x^T R x = z^H H z
    rmat real_embed_hermitian(const cmat &H);

    // Real vector r with r . x = Re{y^H z}
    rvec real_embed_linear(const cvec &y);

    // ------------------------------------------------------------------------
    // Smooth convex program
    //
    //   maximize    c . x
    //   subject to  g_i(x) <= 0,
    //   g_i(x) = sum_b x_b^T Q_b x_b + a_i . x + r_i + e_i 2^{x[j_i]},   Q_b PSD, e_i >= 0
    // ------------------------------------------------------------------------

    enum class constraint_kind
    {
        affine_le,           // a . x + r <= 0
        convex_quadratic_le, // quadratic + affine <= 0
        exp_le               // e 2^{x_j} + affine <= 0
    };

    // x_b^T Q x_b over the contiguous block [offset, offset + Q.rows())
    struct quad_block
    {
        int offset = 0;
        std::shared_ptr<const rmat> q;
    };

    struct constraint
    {
        constraint_kind kind = constraint_kind::affine_le;
        std::vector<quad_block> quad;
        rvec linear;            // dense, size n
        double constant = 0.0;
        int exp_index = -1;     // index j of the 2^{x_j} term, -1 when absent
        double exp_coeff = 0.0; // e >= 0
        std::string label;

        double value(const rvec &x) const;
    };

    struct convex_subproblem
    {
        int n_vars = 0;
        rvec objective; // maximize objective . x
        std::vector<constraint> constraints;

        // Checks dimensions, finiteness, e >= 0 and PSD blocks (eigenvalue floor -1e-10 trace).
        // Throws std::invalid_argument.
        void validate() const;

        // max_i g_i(x), or -inf without constraints
        double max_constraint(const rvec &x) const;
    };

    enum class solve_status
    {
        optimal,
        max_iters,
        numerical_failure
    };

    std::string to_string(solve_status s);

    struct barrier_options
    {
        double t0 = 1.0;          // initial barrier weight
        double mu = 10.0;         // barrier weight multiplier
        double gap_tol = 1e-8;    // stop once m / t falls below
        double optimal_gap = 1e-6; // m / t required for an optimal verdict, relative to max(1, |objective|)
        double newton_tol = 1e-10; // centering ends when decrement^2 / 2 drops below
        double ls_alpha = 0.25;
        double ls_beta = 0.5;
        int max_newton = 100;     // per centering step
        int max_outer = 60;
    };

    struct solve_report
    {
        rvec x;
        double objective = 0.0;
        double max_violation = 0.0;  // max(0, max_i g_i(x))
        double duality_measure = 0.0; // m / t at the last completed centering
        int outer_iterations = 0;
        int newton_steps = 0;
        solve_status status = solve_status::numerical_failure;
    };

    // Log-barrier path following with damped Newton steps and backtracking line search.
    // When a centering step fails, the last centered point is returned.
    // `start` must be strictly feasible; throws std::invalid_argument otherwise.
    solve_report solve(const convex_subproblem &prob, const rvec &start, const barrier_options &opts = {});

} // namespace mixsec

#endif
