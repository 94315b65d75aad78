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

#include "mixsec/sca_engine.hpp"
#include "mixsec/analog_codebook.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace mixsec
{
    // --- building blocks ----------------------------------------------------

    effective_channel_set effective_channels(const scenario &scn, const cmat &analog)
    {
        if (analog.rows() != scn.geometry.n_antennas)
            throw std::invalid_argument("effective_channels: analog rows must equal the antenna count");
        auto eff = [&](const cvec &h)
        {
            if (h.size() != analog.rows())
                throw std::invalid_argument("effective_channels: channel length mismatch");
            const cvec y = analog.adjoint() * h;
            cmat H = y * y.adjoint();
            return H;
        };
        effective_channel_set out;
        for (const auto &u : scn.irs)
            out.id.push_back(eff(u.channel));
        for (const auto &u : scn.ers)
            out.eh.push_back(eff(u.channel));
        return out;
    }

    namespace
    {
        double form(const cmat &H, const cvec &x)
        {
            return x.dot(H * x).real(); // x^H H x
        }
    } // namespace

    quadratic_terms quad_terms(const effective_channel_set &ch, const cmat &W, const cmat &V)
    {
        const int M = static_cast<int>(ch.id.size()), K = static_cast<int>(ch.eh.size());
        if (W.cols() != M)
            throw std::invalid_argument("quad_terms: W must have one column per information receiver");
        quadratic_terms t;
        t.A = rvec::Zero(M);
        t.B = rvec::Zero(M);
        t.C = rvec::Zero(M);
        t.E = rvec::Zero(K);
        t.F = rvec::Zero(K);
        t.G = rmat::Zero(M, K);

        for (int m = 0; m < M; ++m)
        {
            for (Eigen::Index g = 0; g < V.cols(); ++g)
                t.A[m] += form(ch.id[m], V.col(g));
            for (int j = 0; j < M; ++j)
            {
                const double p = form(ch.id[m], W.col(j));
                t.B[m] += p;
                if (j != m)
                    t.C[m] += p;
            }
        }
        for (int k = 0; k < K; ++k)
        {
            for (Eigen::Index g = 0; g < V.cols(); ++g)
                t.E[k] += form(ch.eh[k], V.col(g));
            for (int j = 0; j < M; ++j)
            {
                const double p = form(ch.eh[k], W.col(j));
                t.F[k] += p;
                for (int m = 0; m < M; ++m)
                    if (m != j)
                        t.G(m, k) += p;
            }
        }
        return t;
    }

    double quad_lower_bound::operator()(const cvec &x) const
    {
        return 2.0 * slope.dot(x).real() - offset;
    }

    quad_lower_bound taylor_quad_lb_coeffs(const cmat &H, const cvec &x_ref)
    {
        if (H.rows() != H.cols() || H.rows() != x_ref.size())
            throw std::invalid_argument("taylor_quad_lb_coeffs: dimension mismatch");
        const double tol = 1e-12 * std::max(1.0, H.cwiseAbs().maxCoeff());
        if ((H - H.adjoint()).cwiseAbs().maxCoeff() > tol)
            throw std::invalid_argument("taylor_quad_lb_coeffs: matrix is not Hermitian");
        quad_lower_bound lb;
        lb.slope = H * x_ref;
        lb.offset = x_ref.dot(lb.slope).real();
        return lb;
    }

    exp_tangent exp_tangent_lb(double t0)
    {
        exp_tangent e;
        e.point = t0;
        e.value = std::exp2(t0);
        e.slope = e.value * ln2;
        return e;
    }

    // --- sca_model ----------------------------------------------------------

    sca_model::sca_model(const scenario &scn, const cmat &analog, bool analog_is_identity, bool with_an)
    {
        scn.validate();
        M_ = scn.n_irs();
        K_ = scn.n_ers();
        G_ = with_an ? scn.an_streams : 0;
        n_rf_ = static_cast<int>(analog.cols());
        if (M_ + G_ > n_rf_)
            throw std::invalid_argument("sca_model: M + G exceeds the analog columns");
        rtype_ = scn.receiver_type;
        weights_ = scn.weights;
        xi_ = scn.xi;
        pmax_ = scn.pmax;

        noise_ref_ = std::numeric_limits<double>::infinity();
        for (const auto *group : {&scn.irs, &scn.ers})
            for (const auto &u : *group)
                noise_ref_ = std::min(noise_ref_, u.noise_power);
        if (!std::isfinite(noise_ref_))
            noise_ref_ = 1.0;

        const auto eff = effective_channels(scn, analog);
        const double scale = pmax_ / noise_ref_;
        for (int m = 0; m < M_; ++m)
        {
            hid_.push_back(eff.id[m] * scale);
            rid_.push_back(std::make_shared<const rmat>(real_embed_hermitian(hid_.back())));
        }
        for (int k = 0; k < K_; ++k)
        {
            heh_.push_back(eff.eh[k] * scale);
            reh_.push_back(std::make_shared<const rmat>(real_embed_hermitian(heh_.back())));
        }
        noise_id_.resize(M_);
        noise_eh_.resize(K_);
        for (int m = 0; m < M_; ++m)
            noise_id_[m] = scn.irs[m].noise_power / noise_ref_;
        for (int k = 0; k < K_; ++k)
            noise_eh_[k] = scn.ers[k].noise_power / noise_ref_;
        q0_ = scn.q0 / noise_ref_;

        power_matrix_ = analog_is_identity ? cmat(cmat::Identity(n_rf_, n_rf_)) : cmat(analog.adjoint() * analog);
        power_matrix_ = 0.5 * (power_matrix_ + power_matrix_.adjoint()).eval();
        rpower_ = std::make_shared<const rmat>(real_embed_hermitian(power_matrix_));

        Eigen::SelfAdjointEigenSolver<cmat> es(power_matrix_);
        const rvec &ev = es.eigenvalues();
        rvec inv = rvec::Zero(ev.size());
        const double cut = 1e-10 * std::max(ev.maxCoeff(), 0.0);
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            if (ev[i] > cut)
                inv[i] = 1.0 / ev[i];
        power_pinv_ = es.eigenvectors() * inv.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    }

    int sca_model::n_vars() const
    {
        return n_beam_vars() + 2 * M_ + K_ + M_ * K_ + (K_ > 0 ? M_ : 0);
    }

    bool sca_model::any_active() const
    {
        return std::any_of(weights_.begin(), weights_.end(), [](double w) { return w > 0.0; });
    }

    rvec sca_model::pack(const cmat &W, const cmat &V, const slack_point &s) const
    {
        if (W.rows() != n_rf_ || W.cols() != M_)
            throw std::invalid_argument("sca_model::pack: W must be N_RF x M");
        if (G_ > 0 && (V.rows() != n_rf_ || V.cols() != G_))
            throw std::invalid_argument("sca_model::pack: V must be N_RF x G");

        const double amp = 1.0 / std::sqrt(pmax_);
        rvec x = rvec::Zero(n_vars());
        for (int m = 0; m < M_; ++m)
            x.segment(w_offset(m), 2 * n_rf_) = real_embed(cvec(W.col(m) * amp));
        for (int g = 0; g < G_; ++g)
            x.segment(v_offset(g), 2 * n_rf_) = real_embed(cvec(V.col(g) * amp));

        const rvec &lam = rtype_ == receiver_type::type_I ? s.lambda : s.lambda_tilde;
        const rvec &mu = rtype_ == receiver_type::type_I ? s.mu : s.mu_tilde;
        for (int m = 0; m < M_; ++m)
        {
            if (lam.size() == M_)
                x[lambda_index(m)] = lam[m];
            if (mu.size() == M_)
                x[mu_index(m)] = mu[m];
            if (K_ > 0 && s.epigraph.size() == M_)
                x[epigraph_index(m)] = s.epigraph[m];
        }
        for (int k = 0; k < K_; ++k)
        {
            if (s.tau.size() == K_)
                x[tau_index(k)] = s.tau[k];
            if (s.kappa.rows() == M_ && s.kappa.cols() == K_)
                for (int m = 0; m < M_; ++m)
                    x[kappa_index(m, k)] = s.kappa(m, k);
        }
        return x;
    }

    void sca_model::unpack(const rvec &x, cmat &W, cmat &V) const
    {
        real_unembed(x, n_rf_, M_, G_, W, V);
        W *= std::sqrt(pmax_);
        V *= std::sqrt(pmax_);
    }

    slack_point sca_model::slacks_of(const rvec &x) const
    {
        slack_point s;
        rvec lam(M_), mu(M_);
        for (int m = 0; m < M_; ++m)
        {
            lam[m] = x[lambda_index(m)];
            mu[m] = x[mu_index(m)];
        }
        if (rtype_ == receiver_type::type_I)
        {
            s.lambda = lam;
            s.mu = mu;
        }
        else
        {
            s.lambda_tilde = lam;
            s.mu_tilde = mu;
        }
        s.tau.resize(K_);
        s.kappa.resize(M_, K_);
        for (int k = 0; k < K_; ++k)
        {
            s.tau[k] = x[tau_index(k)];
            for (int m = 0; m < M_; ++m)
                s.kappa(m, k) = x[kappa_index(m, k)];
        }
        if (K_ > 0)
        {
            s.epigraph.resize(M_);
            for (int m = 0; m < M_; ++m)
                s.epigraph[m] = x[epigraph_index(m)];
        }
        return s;
    }

    quadratic_terms sca_model::internal_terms(const cmat &W, const cmat &V) const
    {
        effective_channel_set ch{hid_, heh_};
        const double amp = 1.0 / std::sqrt(pmax_);
        const cmat Vn = G_ > 0 ? cmat(V * amp) : cmat(n_rf_, 0);
        return quad_terms(ch, W * amp, Vn);
    }

    slack_point sca_model::tight_slacks(const cmat &W, const cmat &V) const
    {
        const auto t = internal_terms(W, V);
        slack_point s;
        rvec lam(M_), mu(M_);
        for (int m = 0; m < M_; ++m)
        {
            if (rtype_ == receiver_type::type_I)
            {
                lam[m] = std::log2(t.A[m] + t.B[m] + noise_id_[m]);
                mu[m] = std::log2(t.A[m] + t.C[m] + noise_id_[m]);
            }
            else
            {
                lam[m] = std::log2(t.B[m] + noise_id_[m]);
                mu[m] = std::log2(t.C[m] + noise_id_[m]);
            }
        }
        if (rtype_ == receiver_type::type_I)
        {
            s.lambda = lam;
            s.mu = mu;
        }
        else
        {
            s.lambda_tilde = lam;
            s.mu_tilde = mu;
        }
        s.tau.resize(K_);
        s.kappa.resize(M_, K_);
        for (int k = 0; k < K_; ++k)
        {
            s.tau[k] = std::log2(t.E[k] + t.F[k] + noise_eh_[k]);
            for (int m = 0; m < M_; ++m)
                s.kappa(m, k) = std::log2(t.E[k] + t.G(m, k) + noise_eh_[k]);
        }
        if (K_ > 0)
        {
            s.epigraph.resize(M_);
            for (int m = 0; m < M_; ++m)
                s.epigraph[m] = (s.tau.transpose() - s.kappa.row(m)).maxCoeff();
        }
        return s;
    }

    double sca_model::objective(const rvec &x) const
    {
        double f = 0.0;
        for (int m = 0; m < M_; ++m)
        {
            if (!active(m))
                continue;
            double term = x[lambda_index(m)] - x[mu_index(m)];
            if (K_ > 0)
                term -= x[epigraph_index(m)];
            f += weights_[m] * term;
        }
        return f;
    }

    rvec sca_model::interior_shift(const rvec &x, double delta) const
    {
        rvec y = x;
        for (int m = 0; m < M_; ++m)
        {
            y[lambda_index(m)] -= delta;
            y[mu_index(m)] += delta;
            if (K_ > 0)
                y[epigraph_index(m)] += 3.0 * delta;
        }
        for (int k = 0; k < K_; ++k)
        {
            y[tau_index(k)] += delta;
            for (int m = 0; m < M_; ++m)
                y[kappa_index(m, k)] -= delta;
        }
        return y;
    }

    double sca_model::internal_energy(const rvec &x) const
    {
        double e = 0.0;
        for (int k = 0; k < K_; ++k)
            for (int c = 0; c < M_ + G_; ++c)
            {
                const auto xc = x.segment(2 * n_rf_ * c, 2 * n_rf_);
                e += xc.dot(*reh_[k] * xc);
            }
        return xi_ * e;
    }

    double sca_model::internal_power(const rvec &x) const
    {
        double p = 0.0;
        for (int c = 0; c < M_ + G_; ++c)
        {
            const auto xc = x.segment(2 * n_rf_ * c, 2 * n_rf_);
            p += xc.dot(*rpower_ * xc);
        }
        return p;
    }

    rvec sca_model::max_energy_step(const rvec &x) const
    {
        const int cols = M_ + G_;
        std::vector<cvec> grad(cols);
        double norm2 = 0.0;
        for (int c = 0; c < cols; ++c)
        {
            const cvec xc = real_unembed(x, 2 * n_rf_ * c, n_rf_);
            cvec g = cvec::Zero(n_rf_);
            for (int k = 0; k < K_; ++k)
                g += heh_[k] * xc;
            grad[c] = g;
            norm2 += g.dot(power_pinv_ * g).real();
        }
        rvec y = x;
        if (!(norm2 > 0.0))
            return y;
        const double inv = 1.0 / std::sqrt(norm2);
        for (int c = 0; c < cols; ++c)
            y.segment(2 * n_rf_ * c, 2 * n_rf_) = real_embed(cvec(power_pinv_ * grad[c] * inv));
        return y;
    }

    namespace
    {
        void add_quad(constraint &c, const std::shared_ptr<const rmat> &q, int offset)
        {
            c.quad.push_back({offset, q});
        }

        // Adds sign * (2 Re{(H x_ref)^H x} - x_ref^H H x_ref) on the block at offset
        void add_lower_bound(constraint &c, const cmat &H, const cvec &x_ref, int offset, double sign)
        {
            const auto lb = taylor_quad_lb_coeffs(H, x_ref);
            c.linear.segment(offset, 2 * x_ref.size()) += sign * 2.0 * real_embed_linear(lb.slope);
            c.constant -= sign * lb.offset;
        }

        // Adds -(2^t0 + 2^t0 ln2 (t - t0)) on variable idx
        void add_negative_tangent(constraint &c, double t0, int idx)
        {
            const auto e = exp_tangent_lb(t0);
            c.linear[idx] -= e.slope;
            c.constant -= e.value - e.slope * e.point;
        }

        constraint make_constraint(int n, std::string label)
        {
            constraint c;
            c.linear = rvec::Zero(n);
            c.label = std::move(label);
            return c;
        }

        void classify(constraint &c)
        {
            if (c.exp_index >= 0)
                c.kind = constraint_kind::exp_le;
            else if (!c.quad.empty())
                c.kind = constraint_kind::convex_quadratic_le;
            else
                c.kind = constraint_kind::affine_le;
        }
    } // namespace

    convex_subproblem sca_model::assemble(const rvec &x) const
    {
        if (x.size() != n_vars() || !x.allFinite())
            throw std::invalid_argument("sca_model::assemble: expansion point has wrong size or non-finite entries");

        const int n = n_vars();
        std::vector<cvec> w(M_), v(G_);
        for (int m = 0; m < M_; ++m)
            w[m] = real_unembed(x, w_offset(m), n_rf_);
        for (int g = 0; g < G_; ++g)
            v[g] = real_unembed(x, v_offset(g), n_rf_);

        convex_subproblem p;
        p.n_vars = n;
        p.objective = rvec::Zero(n);
        for (int m = 0; m < M_; ++m)
            if (active(m))
            {
                p.objective[lambda_index(m)] += weights_[m];
                p.objective[mu_index(m)] -= weights_[m];
                if (K_ > 0)
                    p.objective[epigraph_index(m)] -= weights_[m];
            }

        const bool type_I = rtype_ == receiver_type::type_I;
        for (int m = 0; m < M_; ++m)
        {
            if (!active(m))
                continue;
            const std::string id = std::to_string(m);

            // Useful signal: lower-bounded received power >= 2^lambda
            {
                auto c = make_constraint(n, type_I ? "p1re1_sca[" + id + "]" : "p2re1_sca[" + id + "]");
                c.exp_index = lambda_index(m);
                c.exp_coeff = 1.0;
                if (type_I)
                    for (int g = 0; g < G_; ++g)
                        add_lower_bound(c, hid_[m], v[g], v_offset(g), -1.0);
                for (int j = 0; j < M_; ++j)
                    add_lower_bound(c, hid_[m], w[j], w_offset(j), -1.0);
                c.constant -= noise_id_[m];
                classify(c);
                p.constraints.push_back(std::move(c));
            }
            // Interference plus noise <= tangent of 2^mu
            {
                auto c = make_constraint(n, type_I ? "p1re2_sca[" + id + "]" : "p2re2_sca[" + id + "]");
                if (type_I)
                    for (int g = 0; g < G_; ++g)
                        add_quad(c, rid_[m], v_offset(g));
                for (int j = 0; j < M_; ++j)
                    if (j != m)
                        add_quad(c, rid_[m], w_offset(j));
                c.constant += noise_id_[m];
                add_negative_tangent(c, x[mu_index(m)], mu_index(m));
                classify(c);
                p.constraints.push_back(std::move(c));
            }
            // Eavesdropper interference: lower-bounded E_k + G_{m,k} + noise >= 2^kappa
            for (int k = 0; k < K_; ++k)
            {
                auto c = make_constraint(n, "p1re4_sca[" + id + "," + std::to_string(k) + "]");
                c.exp_index = kappa_index(m, k);
                c.exp_coeff = 1.0;
                for (int g = 0; g < G_; ++g)
                    add_lower_bound(c, heh_[k], v[g], v_offset(g), -1.0);
                for (int j = 0; j < M_; ++j)
                    if (j != m)
                        add_lower_bound(c, heh_[k], w[j], w_offset(j), -1.0);
                c.constant -= noise_eh_[k];
                classify(c);
                p.constraints.push_back(std::move(c));
            }
            // Epigraph of max_k (tau_k - kappa_{m,k})
            for (int k = 0; k < K_; ++k)
            {
                auto c = make_constraint(n, "epigraph[" + id + "," + std::to_string(k) + "]");
                c.linear[tau_index(k)] = 1.0;
                c.linear[kappa_index(m, k)] = -1.0;
                c.linear[epigraph_index(m)] = -1.0;
                classify(c);
                p.constraints.push_back(std::move(c));
            }
        }

        // Total received power at each ER <= tangent of 2^tau
        if (any_active())
            for (int k = 0; k < K_; ++k)
            {
                auto c = make_constraint(n, "p1re3_sca[" + std::to_string(k) + "]");
                for (int g = 0; g < G_; ++g)
                    add_quad(c, reh_[k], v_offset(g));
                for (int j = 0; j < M_; ++j)
                    add_quad(c, reh_[k], w_offset(j));
                c.constant += noise_eh_[k];
                add_negative_tangent(c, x[tau_index(k)], tau_index(k));
                classify(c);
                p.constraints.push_back(std::move(c));
            }

        // Energy harvesting: Q0 - xi sum_k (E_k^lb + F_k^lb) <= 0
        if (q0_ > 0.0)
        {
            auto c = make_constraint(n, "q_sca");
            for (int k = 0; k < K_; ++k)
            {
                for (int g = 0; g < G_; ++g)
                    add_lower_bound(c, heh_[k] * xi_, v[g], v_offset(g), -1.0);
                for (int j = 0; j < M_; ++j)
                    add_lower_bound(c, heh_[k] * xi_, w[j], w_offset(j), -1.0);
            }
            c.constant += q0_;
            classify(c);
            p.constraints.push_back(std::move(c));
        }

        // Transmit power, normalized to Pmax = 1
        {
            auto c = make_constraint(n, "sump_re");
            for (int col = 0; col < M_ + G_; ++col)
                add_quad(c, rpower_, 2 * n_rf_ * col);
            c.constant = -1.0;
            classify(c);
            p.constraints.push_back(std::move(c));
        }
        return p;
    }

    convex_subproblem assemble_subproblem(const scenario &scn, const cmat &analog, bool analog_is_identity,
                                          const cmat &W, const cmat &V, const slack_point &slacks)
    {
        sca_model model(scn, analog, analog_is_identity, V.cols() > 0);
        return model.assemble(model.pack(W, V, slacks));
    }

    // --- initialization and feasibility ---------------------------------------

    std::pair<cmat, cmat> init_digital(const scenario &scn, const cmat &analog, std::uint64_t seed, bool with_an,
                                       bool analog_is_identity)
    {
        const Eigen::Index rows = analog.cols();
        const int G = with_an ? scn.an_streams : 0;
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
        cmat W(rows, scn.n_irs()), V(rows, G);
        for (cmat *m : {&W, &V})
            for (Eigen::Index j = 0; j < m->cols(); ++j)
                for (Eigen::Index i = 0; i < rows; ++i)
                {
                    const double re = nd(rng);
                    (*m)(i, j) = cplx(re, nd(rng));
                }

        hybrid_beamformer bf;
        bf.analog = analog;
        bf.analog_is_identity = analog_is_identity;
        bf.info = W;
        bf.an = V;
        const double p = transmit_power(bf);
        if (p > 0.0)
        {
            const double s = std::sqrt(scn.pmax / p);
            W *= s;
            V *= s;
        }
        return {W, V};
    }

    namespace
    {
        sca_model model_for(const scenario &scn, const hybrid_beamformer &bf)
        {
            const bool with_an = bf.an.cols() > 0;
            if (with_an && bf.an.cols() != scn.an_streams)
                throw std::invalid_argument("restore_feasibility: V must have G columns or none");
            return sca_model(scn, bf.analog, bf.analog_is_identity, with_an);
        }
    } // namespace

    hybrid_beamformer restore_feasibility(const scenario &scn, const hybrid_beamformer &bf, int max_iters)
    {
        const sca_model model = model_for(scn, bf);
        rvec x = model.pack(bf.info, bf.an, slack_point{});
        const double q0 = model.internal_q0();
        const double target = q0 * (1.0 + 1e-3);

        hybrid_beamformer out = bf;
        const double p = model.internal_power(x);
        const bool power_ok = p <= 1.0;
        if (!power_ok)
            x.head(model.n_beam_vars()) *= 1.0 / std::sqrt(p);

        double e = model.internal_energy(x);
        if (q0 <= 0.0 || e >= target)
        {
            if (!power_ok)
                model.unpack(x, out.info, out.an);
            return out;
        }

        for (int it = 0; it < max_iters; ++it)
        {
            const rvec y = model.max_energy_step(x);
            const double e_new = model.internal_energy(y);
            const bool stalled = !(e_new - e > 1e-12 * std::abs(e_new));
            if (e_new >= target || (stalled && e_new > q0 * (1.0 + 2e-6)))
            {
                model.unpack(y, out.info, out.an);
                return out;
            }
            if (stalled)
                throw infeasible_scenario("energy target " + std::to_string(scn.q0) + " W exceeds the largest harvestable energy " +
                                          std::to_string(e_new * model.noise_unit()) + " W under the power budget");
            x = y;
            e = e_new;
        }
        throw infeasible_scenario("max-energy phase did not reach the energy target within " + std::to_string(max_iters) +
                                  " iterations (reached " + std::to_string(e * model.noise_unit()) + " W)");
    }

    double max_harvestable_energy(const scenario &scn, const cmat &analog, bool analog_is_identity, int max_iters)
    {
        const sca_model model(scn, analog, analog_is_identity, false);
        const auto [W, V] = init_digital(scn, analog, 0x6d61782d656eULL, false, analog_is_identity);
        rvec x = model.pack(W, V, slack_point{});
        double e = model.internal_energy(x);
        for (int it = 0; it < max_iters; ++it)
        {
            const rvec y = model.max_energy_step(x);
            const double e_new = model.internal_energy(y);
            x = y;
            const bool done = !(e_new - e > 1e-13 * std::abs(e_new));
            e = std::max(e, e_new);
            if (done)
                break;
        }
        return e * model.noise_unit();
    }

    // --- SCA loop -----------------------------------------------------------

    namespace
    {
        double constraint_residual(const sca_model &model, const rvec &x)
        {
            double r = std::max(0.0, model.internal_power(x) - 1.0);
            const double q0 = model.internal_q0();
            if (q0 > 0.0)
                r = std::max(r, (q0 - model.internal_energy(x)) / q0);
            return std::max(r, 0.0);
        }
    } // namespace

    sca_result sca_solve(const scenario &scn, const solver_options &opts)
    {
        const auto t_begin = std::chrono::steady_clock::now();
        scn.validate();

        const bool identity = opts.fully_digital;
        const bool with_an = !opts.no_an && scn.an_streams > 0;
        const int N = scn.geometry.n_antennas;
        const cmat analog = identity ? cmat(cmat::Identity(N, N)) : build_analog(scn);

        hybrid_beamformer bf;
        bf.analog = analog;
        bf.analog_is_identity = identity;
        std::tie(bf.info, bf.an) = init_digital(scn, analog, opts.seed, with_an, identity);
        bf = restore_feasibility(scn, bf, opts.restore_max_iters);

        const sca_model model(scn, analog, identity, with_an);
        rvec x = model.pack(bf.info, bf.an, slack_point{});

        // Strict interior for the power constraint; the restored energy margin absorbs the shrink
        const double p = model.internal_power(x);
        if (p > 1.0 - 1e-7)
            x.head(model.n_beam_vars()) *= std::sqrt((1.0 - 1e-6) / p);
        if (model.internal_q0() > 0.0 && !(model.internal_energy(x) > model.internal_q0()))
            throw infeasible_scenario("initial point misses the energy target");
        {
            cmat W, V;
            model.unpack(x, W, V);
            x = model.pack(W, V, model.tight_slacks(W, V));
        }

        sca_result res;
        auto &trace = res.trace;
        trace.objective.push_back(model.objective(x));
        trace.residual.push_back(constraint_residual(model, x));

        for (int it = 1; it <= opts.max_iters; ++it)
        {
            const auto prob = model.assemble(x);
            const rvec start = model.interior_shift(x);
            solve_report rep;
            try
            {
                rep = solve(prob, start, opts.barrier);
            }
            catch (const std::invalid_argument &e)
            {
                throw solver_failure("SCA iteration " + std::to_string(it) + ": " + e.what());
            }
            const double prev = trace.objective.back();
            // An inexact solve is usable once its certified gap is below the SCA resolution
            const bool usable = rep.status == solve_status::optimal ||
                                rep.duality_measure <= opts.rel_tol * std::max(1.0, std::abs(rep.objective));
            if (!usable)
                throw solver_failure("SCA iteration " + std::to_string(it) + ": convex subproblem ended with status " +
                                     to_string(rep.status) + " after " + std::to_string(rep.newton_steps) + " Newton steps");
            if (rep.objective < prev)
            {
                trace.converged = true;
                break;
            }
            x = rep.x;
            trace.objective.push_back(rep.objective);
            trace.residual.push_back(constraint_residual(model, x));
            trace.newton_steps.push_back(rep.newton_steps);
            trace.iterations = it;
            if (rep.objective - prev < opts.rel_tol * std::max(1.0, std::abs(prev)))
            {
                trace.converged = true;
                break;
            }
        }

        model.unpack(x, bf.info, bf.an);
        res.objective = model.objective(model.pack(bf.info, bf.an, model.tight_slacks(bf.info, bf.an)));
        if (!with_an)
            bf.an = cmat::Zero(analog.cols(), scn.an_streams);
        res.bf = bf;
        for (int m = 0; m < scn.n_irs(); ++m)
        {
            const double margin = secrecy_margin(scn, m, bf, scn.receiver_type);
            res.secrecy_margin.push_back(margin);
            if (scn.weights[m] > 0.0 && margin < 0.0)
                res.negative_secrecy = true;
        }
        trace.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_begin).count();
        return res;
    }

} // namespace mixsec
