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

#include "mixsec/convex_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace mixsec
{
    // --- real embedding -----------------------------------------------------

    rvec real_embed(const cvec &z)
    {
        rvec x(2 * z.size());
        for (Eigen::Index i = 0; i < z.size(); ++i)
        {
            x[2 * i] = z[i].real();
            x[2 * i + 1] = z[i].imag();
        }
        return x;
    }

    rvec real_embed(const cmat &W, const cmat &V)
    {
        const Eigen::Index rows = W.cols() > 0 ? W.rows() : V.rows();
        rvec x(2 * rows * (W.cols() + V.cols()));
        Eigen::Index pos = 0;
        for (const cmat *m : {&W, &V})
            for (Eigen::Index c = 0; c < m->cols(); ++c)
            {
                x.segment(pos, 2 * rows) = real_embed(cvec(m->col(c)));
                pos += 2 * rows;
            }
        return x;
    }

    cvec real_unembed(const rvec &x, int offset, int rows)
    {
        cvec z(rows);
        for (int i = 0; i < rows; ++i)
            z[i] = cplx(x[offset + 2 * i], x[offset + 2 * i + 1]);
        return z;
    }

    void real_unembed(const rvec &x, int rows, int w_cols, int v_cols, cmat &W, cmat &V)
    {
        if (x.size() < 2L * rows * (w_cols + v_cols))
            throw std::invalid_argument("real_unembed: vector too short");
        W.resize(rows, w_cols);
        V.resize(rows, v_cols);
        for (int c = 0; c < w_cols; ++c)
            W.col(c) = real_unembed(x, 2 * rows * c, rows);
        for (int c = 0; c < v_cols; ++c)
            V.col(c) = real_unembed(x, 2 * rows * (w_cols + c), rows);
    }

    rmat real_embed_hermitian(const cmat &H)
    {
        const Eigen::Index n = H.rows();
        rmat R(2 * n, 2 * n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
            {
                const double p = H(i, j).real(), q = H(i, j).imag();
                R(2 * i, 2 * j) = p;
                R(2 * i, 2 * j + 1) = -q;
                R(2 * i + 1, 2 * j) = q;
                R(2 * i + 1, 2 * j + 1) = p;
            }
        // Symmetrize away rounding in H's Hermitian part
        return 0.5 * (R + R.transpose());
    }

    rvec real_embed_linear(const cvec &y)
    {
        return real_embed(y);
    }

    // --- problem description -----------------------------------------------

    double constraint::value(const rvec &x) const
    {
        double g = constant + linear.dot(x);
        for (const auto &b : quad)
        {
            const auto xb = x.segment(b.offset, b.q->rows());
            g += xb.dot(*b.q * xb);
        }
        if (exp_index >= 0)
            g += exp_coeff * std::exp2(x[exp_index]);
        return g;
    }

    void convex_subproblem::validate() const
    {
        if (n_vars < 1 || objective.size() != n_vars || !objective.allFinite())
            throw std::invalid_argument("convex_subproblem: objective size or values invalid");

        std::map<const rmat *, bool> checked;
        for (const auto &c : constraints)
        {
            const std::string who = "convex_subproblem: constraint '" + c.label + "' ";
            if (c.linear.size() != n_vars || !c.linear.allFinite() || !std::isfinite(c.constant))
                throw std::invalid_argument(who + "has invalid affine coefficients");
            if (c.exp_index >= n_vars || (c.exp_index >= 0 && !(c.exp_coeff >= 0.0 && std::isfinite(c.exp_coeff))))
                throw std::invalid_argument(who + "has an invalid exponential term");
            for (const auto &b : c.quad)
            {
                if (!b.q || b.q->rows() != b.q->cols() || b.offset < 0 || b.offset + b.q->rows() > n_vars)
                    throw std::invalid_argument(who + "has a quadratic block out of range");
                if (checked.count(b.q.get()))
                    continue;
                const rmat &q = *b.q;
                if (!q.allFinite() || (q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + q.cwiseAbs().maxCoeff()))
                    throw std::invalid_argument(who + "has a non-symmetric quadratic block");
                const double floor = -1e-10 * std::max(q.trace(), 0.0);
                Eigen::SelfAdjointEigenSolver<rmat> es(q, Eigen::EigenvaluesOnly);
                if (es.eigenvalues().minCoeff() < floor - 1e-300)
                    throw std::invalid_argument(who + "has an indefinite quadratic block");
                checked[b.q.get()] = true;
            }
        }
    }

    double convex_subproblem::max_constraint(const rvec &x) const
    {
        double g = -std::numeric_limits<double>::infinity();
        for (const auto &c : constraints)
            g = std::max(g, c.value(x));
        return g;
    }

    std::string to_string(solve_status s)
    {
        switch (s)
        {
        case solve_status::optimal: return "optimal";
        case solve_status::max_iters: return "max_iters";
        case solve_status::numerical_failure: return "numerical_failure";
        }
        return "unknown";
    }

    // --- barrier method -----------------------------------------------------

    namespace
    {
        struct prepared_constraint
        {
            const constraint *c = nullptr;
            std::vector<int> support; // indices where the gradient can be non-zero
        };

        std::vector<prepared_constraint> prepare(const convex_subproblem &prob)
        {
            std::vector<prepared_constraint> out;
            out.reserve(prob.constraints.size());
            for (const auto &c : prob.constraints)
            {
                std::vector<char> mask(prob.n_vars, 0);
                for (int i = 0; i < prob.n_vars; ++i)
                    if (c.linear[i] != 0.0)
                        mask[i] = 1;
                for (const auto &b : c.quad)
                    for (Eigen::Index i = 0; i < b.q->rows(); ++i)
                        mask[b.offset + i] = 1;
                if (c.exp_index >= 0)
                    mask[c.exp_index] = 1;
                prepared_constraint p{&c, {}};
                for (int i = 0; i < prob.n_vars; ++i)
                    if (mask[i])
                        p.support.push_back(i);
                out.push_back(std::move(p));
            }
            return out;
        }

        // Solves H d = rhs for a symmetric positive semidefinite H. Jacobi scaling plus a small
        // ridge keeps directions that no constraint touches (flat directions) at zero.
        bool newton_solve(const rmat &H, const rvec &rhs, rvec &d)
        {
            const Eigen::Index n = H.rows();
            rvec s(n);
            for (Eigen::Index i = 0; i < n; ++i)
                s[i] = H(i, i) > 0.0 ? 1.0 / std::sqrt(H(i, i)) : 1.0;
            rmat Hs = s.asDiagonal() * H * s.asDiagonal();
            const rvec rs = s.cwiseProduct(rhs);
            for (double ridge = 1e-13; ridge < 1e-1; ridge *= 100.0)
            {
                rmat A = Hs;
                A.diagonal().array() += ridge;
                Eigen::LLT<rmat> llt(A);
                if (llt.info() != Eigen::Success)
                    continue;
                d = s.cwiseProduct(llt.solve(rs));
                if (d.allFinite())
                    return true;
            }
            return false;
        }
    } // namespace

    solve_report solve(const convex_subproblem &prob, const rvec &start, const barrier_options &opts)
    {
        prob.validate();
        if (start.size() != prob.n_vars || !start.allFinite())
            throw std::invalid_argument("solve: start point has wrong size or non-finite entries");
        for (const auto &c : prob.constraints)
            if (!(c.value(start) < 0.0))
                throw std::invalid_argument("solve: start point is not strictly feasible for constraint '" + c.label + "'");

        const int n = prob.n_vars;
        const int m = static_cast<int>(prob.constraints.size());
        const auto prep = prepare(prob);

        solve_report rep;
        rep.x = start;
        rep.duality_measure = std::numeric_limits<double>::infinity();

        if (m == 0)
        {
            rep.objective = prob.objective.dot(start);
            rep.status = prob.objective.isZero(0.0) ? solve_status::optimal : solve_status::numerical_failure;
            rep.duality_measure = 0.0;
            return rep;
        }

        rvec &x = rep.x;
        rvec g(m), grad_sum(n), dir(n), rhs(n), trial(n);
        rmat H(n, n), grads(n, m);
        std::vector<double> lin(m), quad(m), expbase(m);
        double t = opts.t0;
        bool stalled = false;
        rvec x_centered = start;
        bool have_centered = false;

        for (int outer = 0; outer < opts.max_outer && !stalled; ++outer)
        {
            bool centered = false;
            double prev_dec2 = std::numeric_limits<double>::infinity();
            for (int it = 0; it < opts.max_newton; ++it)
            {
                // Gradient and Hessian of  -t c.x - sum log(-g_i)
                H.setZero();
                grad_sum = -t * prob.objective;
                for (int i = 0; i < m; ++i)
                {
                    const constraint &c = *prep[i].c;
                    auto gi = grads.col(i);
                    gi.setZero();
                    double val = c.constant;
                    for (int p : prep[i].support)
                        gi[p] = c.linear[p];
                    val += c.linear.dot(x);
                    for (const auto &b : c.quad)
                    {
                        const Eigen::Index sz = b.q->rows();
                        const rvec qx = *b.q * x.segment(b.offset, sz);
                        val += x.segment(b.offset, sz).dot(qx);
                        gi.segment(b.offset, sz) += 2.0 * qx;
                    }
                    double e2 = 0.0;
                    if (c.exp_index >= 0)
                    {
                        e2 = c.exp_coeff * std::exp2(x[c.exp_index]);
                        val += e2;
                        gi[c.exp_index] += ln2 * e2;
                    }
                    g[i] = val;
                    const double inv = 1.0 / (-val);
                    grad_sum += inv * gi;
                    for (const auto &b : c.quad)
                    {
                        const Eigen::Index sz = b.q->rows();
                        H.block(b.offset, b.offset, sz, sz) += (2.0 * inv) * *b.q;
                    }
                    if (c.exp_index >= 0)
                        H(c.exp_index, c.exp_index) += inv * ln2 * ln2 * e2;
                    const double inv2 = inv * inv;
                    for (int p : prep[i].support)
                    {
                        const double gp = gi[p] * inv2;
                        if (gp == 0.0)
                            continue;
                        for (int q : prep[i].support)
                            H(p, q) += gp * gi[q];
                    }
                }

                rhs = -grad_sum;
                if (!newton_solve(H, rhs, dir))
                {
                    stalled = true;
                    break;
                }
                const double slope = grad_sum.dot(dir); // negative for a descent direction
                const double dec2 = -slope;
                if (!(dec2 >= 0.0) || !std::isfinite(dec2))
                {
                    stalled = true;
                    break;
                }
                // Second test is the rounding floor: inside the quadratic region a Newton step shrinks dec2 by far more than 4x
                if (dec2 / 2.0 <= opts.newton_tol || (dec2 < 1e-3 && dec2 > 0.25 * prev_dec2))
                {
                    centered = true;
                    break;
                }
                prev_dec2 = dec2;

                // Directional pieces for exact constraint differences along dir
                for (int i = 0; i < m; ++i)
                {
                    const constraint &c = *prep[i].c;
                    double l = c.linear.dot(dir), qd = 0.0;
                    for (const auto &b : c.quad)
                    {
                        const Eigen::Index sz = b.q->rows();
                        const rvec qdir = *b.q * dir.segment(b.offset, sz);
                        l += 2.0 * x.segment(b.offset, sz).dot(qdir);
                        qd += dir.segment(b.offset, sz).dot(qdir);
                    }
                    lin[i] = l;
                    quad[i] = qd;
                    expbase[i] = c.exp_index >= 0 ? c.exp_coeff * std::exp2(x[c.exp_index]) : 0.0;
                }
                auto diff = [&](int i, double s)
                {
                    const constraint &c = *prep[i].c;
                    double d = s * lin[i] + s * s * quad[i];
                    if (c.exp_index >= 0)
                        d += expbase[i] * std::expm1(ln2 * s * dir[c.exp_index]);
                    return d;
                };
                const double obj_dir = prob.objective.dot(dir);
                auto barrier_change = [&](double s, bool &feasible)
                {
                    double change = -t * s * obj_dir;
                    feasible = true;
                    for (int i = 0; i < m; ++i)
                    {
                        const double gi_new = g[i] + diff(i, s);
                        if (!(gi_new < 0.0))
                        {
                            feasible = false;
                            return 0.0;
                        }
                        change -= std::log1p(diff(i, s) / g[i]);
                    }
                    return change;
                };

                double s = 1.0;
                bool accepted = false;
                while (s > 1e-16)
                {
                    bool feasible = false;
                    const double change = barrier_change(s, feasible);
                    if (feasible && change <= opts.ls_alpha * s * slope)
                    {
                        // The incremental differences can drift from direct evaluation on large terms
                        trial = x + s * dir;
                        if (prob.max_constraint(trial) < 0.0)
                        {
                            accepted = true;
                            break;
                        }
                    }
                    s *= opts.ls_beta;
                }
                ++rep.newton_steps;
                if (!accepted)
                {
                    // Rounding floor: the decrement is already negligible at this barrier weight
                    if (dec2 < 1e-3)
                        centered = true;
                    else
                        stalled = true;
                    break;
                }
                x = trial;
            }

            ++rep.outer_iterations;
            if (!centered)
            {
                if (!stalled)
                    rep.status = solve_status::max_iters;
                // Fall back to the last centered point, whose gap is certified
                if (have_centered)
                    x = x_centered;
                break;
            }
            rep.duality_measure = double(m) / t;
            x_centered = x;
            have_centered = true;
            if (rep.duality_measure < opts.gap_tol)
                break;
            t *= opts.mu;
        }

        rep.objective = prob.objective.dot(x);
        rep.max_violation = std::max(0.0, prob.max_constraint(x));
        if (rep.duality_measure <= opts.optimal_gap * std::max(1.0, std::abs(rep.objective)) && rep.max_violation <= 1e-8)
            rep.status = solve_status::optimal;
        else if (stalled)
            rep.status = solve_status::numerical_failure;
        else if (rep.status != solve_status::max_iters)
            rep.status = solve_status::max_iters;
        return rep;
    }

} // namespace mixsec
