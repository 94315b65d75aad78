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

#ifndef MIXSEC_SCA_ENGINE_HPP
#define MIXSEC_SCA_ENGINE_HPP

#include "mixsec/convex_core.hpp"
#include "mixsec/link_metrics.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace mixsec
{
    // H~ = F_A^H h h^H F_A for every IR (id) and ER (eh)
    struct effective_channel_set
    {
        std::vector<cmat> id;
        std::vector<cmat> eh;
    };

    effective_channel_set effective_channels(const scenario &scn, const cmat &analog);

    // Quadratic power terms of the reformulated problem:
    //   A_m = sum_g v_g^H H_m v_g          E_k = sum_g v_g^H H_k v_g
    //   B_m = sum_m' w_m'^H H_m w_m'        F_k = sum_m w_m^H H_k w_m
    //   C_m = sum_{j != m} w_j^H H_m w_j    G_{m,k} = sum_{j != m} w_j^H H_k w_j
    struct quadratic_terms
    {
        rvec A, B, C; // per IR
        rvec E, F;    // per ER
        rmat G;       // M x K
    };

    quadratic_terms quad_terms(const effective_channel_set &ch, const cmat &W, const cmat &V);

    // First-order lower bound of x^H H x around x_ref: 2 Re{(H x_ref)^H x} - x_ref^H H x_ref
    struct quad_lower_bound
    {
        cvec slope;        // H x_ref
        double offset = 0; // x_ref^H H x_ref
        double operator()(const cvec &x) const;
    };

    // Throws std::invalid_argument when H is not Hermitian
    quad_lower_bound taylor_quad_lb_coeffs(const cmat &H, const cvec &x_ref);

    // Tangent of 2^t at t0: 2^t0 + 2^t0 ln2 (t - t0)
    struct exp_tangent
    {
        double point = 0.0;
        double value = 1.0; // 2^t0
        double slope = ln2; // 2^t0 ln2
        double operator()(double t) const { return value + slope * (t - point); }
    };

    exp_tangent exp_tangent_lb(double t0);

    // Slack variables in the log2 domain. Powers are measured in units of the smallest noise power and
    // beamformers in units of sqrt(Pmax), the internal scaling of the SCA model.
    // Type I uses lambda/mu, Type II uses lambda_tilde/mu_tilde.
    struct slack_point
    {
        rvec lambda, mu;             // Type I
        rvec lambda_tilde, mu_tilde; // Type II
        rvec tau;                    // per ER
        rmat kappa;                  // M x K
        rvec epigraph;               // s_m >= tau_k - kappa_{m,k}
    };

    // Per-iteration history of one SCA run
    struct sca_trace
    {
        std::vector<double> objective; // [0]: initial point, then one entry per subproblem [bps/Hz]
        std::vector<double> residual;  // relative violation of the true energy / power constraints
        std::vector<int> newton_steps; // per subproblem
        int iterations = 0;
        bool converged = false;
        double wall_ms = 0.0;
    };

    struct solver_options
    {
        double rel_tol = 1e-4; // stop when the objective gain drops below rel_tol * max(1, |objective|)
        int max_iters = 50;
        barrier_options barrier;
        std::uint64_t seed = 0; // random digital initialization
        int restore_max_iters = 500;
        bool fully_digital = false; // identity analog stage, N_RF = N
        bool no_an = false;         // V = 0
    };

    // ------------------------------------------------------------------------
    // The convexified problem around a point. Holds the normalized channels and the variable layout
    //   [W columns | V columns | lambda | mu | tau | kappa (row-major M x K) | s]
    // where every beamformer column is interleaved (Re, Im).
    // ------------------------------------------------------------------------
    class sca_model
    {
    public:
        sca_model(const scenario &scn, const cmat &analog, bool analog_is_identity, bool with_an);

        int n_rf() const { return n_rf_; }
        int n_ir() const { return M_; }
        int n_er() const { return K_; }
        int n_an() const { return G_; }
        int n_vars() const;
        int n_beam_vars() const { return 2 * n_rf_ * (M_ + G_); }
        int w_offset(int m) const { return 2 * n_rf_ * m; }
        int v_offset(int g) const { return 2 * n_rf_ * (M_ + g); }
        int lambda_index(int m) const { return n_beam_vars() + m; }
        int mu_index(int m) const { return n_beam_vars() + M_ + m; }
        int tau_index(int k) const { return n_beam_vars() + 2 * M_ + k; }
        int kappa_index(int m, int k) const { return n_beam_vars() + 2 * M_ + K_ + m * K_ + k; }
        int epigraph_index(int m) const { return n_beam_vars() + 2 * M_ + K_ + M_ * K_ + m; }

        receiver_type rtype() const { return rtype_; }
        double power_scale() const { return pmax_; }     // W_physical = sqrt(power_scale) x
        double noise_unit() const { return noise_ref_; } // watts per internal power unit

        // Physical (watts-domain) beamformers <-> internal variable vector
        rvec pack(const cmat &W, const cmat &V, const slack_point &slacks) const;
        void unpack(const rvec &x, cmat &W, cmat &V) const;
        slack_point slacks_of(const rvec &x) const;

        // Slacks that make every reformulated constraint hold with equality at (W, V)
        slack_point tight_slacks(const cmat &W, const cmat &V) const;

        // Quadratic terms in internal units
        quadratic_terms internal_terms(const cmat &W, const cmat &V) const;

        // sum_m alpha_m (lambda_m - mu_m - s_m)
        double objective(const rvec &x) const;

        // Shifts the slacks by delta towards the interior of every constraint
        rvec interior_shift(const rvec &x, double delta = 1e-6) const;

        // Convex subproblem expanded around x (beamformers and the mu / tau tangent points)
        convex_subproblem assemble(const rvec &x) const;

        // Harvested energy xi sum_k (E_k + F_k) and transmit power of internal-units beamformer vector
        double internal_energy(const rvec &x) const;
        double internal_power(const rvec &x) const;
        double internal_q0() const { return q0_; }

        // One max-energy SCA step: maximizes the linearized energy at x over the power ball (beamformer part only)
        rvec max_energy_step(const rvec &x) const;

    private:
        int n_rf_ = 0, M_ = 0, K_ = 0, G_ = 0;
        receiver_type rtype_ = receiver_type::type_I;
        std::vector<double> weights_;
        std::vector<cmat> hid_, heh_;              // scaled effective channels
        std::vector<std::shared_ptr<const rmat>> rid_, reh_;
        std::shared_ptr<const rmat> rpower_;
        cmat power_matrix_;                         // F_A^H F_A
        cmat power_pinv_;
        rvec noise_id_, noise_eh_;
        double xi_ = 0.5, q0_ = 0.0, pmax_ = 1.0, noise_ref_ = 1.0;
        bool active(int m) const { return weights_[m] > 0.0; }
        bool any_active() const;
    };

    // Builds the subproblem around (W, V, slacks) for the given receiver type
    convex_subproblem assemble_subproblem(const scenario &scn, const cmat &analog, bool analog_is_identity,
                                          const cmat &W, const cmat &V, const slack_point &slacks);

    // Complex Gaussian digital beamformers scaled to transmit power Pmax. V has G columns, or none when !with_an.
    std::pair<cmat, cmat> init_digital(const scenario &scn, const cmat &analog, std::uint64_t seed,
                                       bool with_an = true, bool analog_is_identity = false);

    // Returns bf unchanged when xi sum_k Q_k >= Q0 (1 + 1e-3) and the power fits, otherwise runs the
    // max-energy SCA phase until that margin is reached. Throws infeasible_scenario when the phase
    // converges below Q0.
    hybrid_beamformer restore_feasibility(const scenario &scn, const hybrid_beamformer &bf, int max_iters = 500);

    // Largest achievable total harvested energy xi max sum_k Q_k [W] under the power budget, found by
    // running the max-energy phase to convergence
    double max_harvestable_energy(const scenario &scn, const cmat &analog, bool analog_is_identity = false,
                                  int max_iters = 20000);

    struct sca_result
    {
        hybrid_beamformer bf;
        sca_trace trace;
        double objective = 0.0;             // final SCA objective (unclamped)
        std::vector<double> secrecy_margin; // per-IR log2 rate differences from link_metrics (unclamped)
        bool negative_secrecy = false;      // some weighted IR converged to a negative margin
    };

    // Full SCA run: analog stage, random start, feasibility restoration, then iterated convex subproblems.
    // Throws infeasible_scenario or solver_failure.
    sca_result sca_solve(const scenario &scn, const solver_options &opts = {});

} // namespace mixsec

#endif
