// SPDX-License-Identifier: Apache-2.0
//
// beamctl - sequential array response control
// Copyright (C) 2026 The beamctl authors
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

#include "beamctl/a2rc.hpp"
#include "beamctl/error.hpp"

#include <algorithm>
#include <cmath>

namespace beamctl
{
    namespace
    {
        void require_nonzero(cplx z, double scale, const char *what)
        {
            if (!(std::abs(z) > 1e-14 * scale))
                fail(ErrorKind::MappingPole, std::string("implicit INR update: ") + what + " vanishes");
        }
    }

    A2rcState A2rcState::initial(const ArrayModel &model, Angle theta0)
    {
        A2rcState s;
        s.weight = steering_vector(model, theta0);
        return s;
    }

    ImplicitInrUpdate implicit_inrs_update(const A2rcState &state, const ArrayModel &model, Angle theta_k, cplx mu_k)
    {
        const std::size_t k = state.step_count() + 1;
        if (state.implicit_inrs.size() != k - 1 || state.directions.size() != k - 1)
            fail(ErrorKind::DimensionMismatch, "implicit INR update: inconsistent history");
        require_nonzero(mu_k, 1.0, "mu_k");

        const CVector ak = steering_vector(model, theta_k);
        ImplicitInrUpdate out;
        out.inrs.reserve(k);
        out.deltas.reserve(k - 1);

        for (std::size_t i = 0; i + 1 < k; ++i)
        {
            const cplx mu_i = state.mu_history[i];
            const cplx beta_prev = state.implicit_inrs[i];
            require_nonzero(mu_i, 1.0, "mu_i");
            require_nonzero(beta_prev, 1.0, "previous INR");
            const cplx coupling = mu_k * dot(steering_vector(model, state.directions[i]), ak);

            // 1/beta_{k,i} = 1/beta_{k-1,i} - mu_k a_i^H a_k / mu_i
            const cplx inv = 1.0 / beta_prev - coupling / mu_i;
            require_nonzero(inv, std::abs(1.0 / beta_prev) + std::abs(coupling / mu_i), "INR reciprocal");
            out.inrs.push_back(1.0 / inv);

            const cplx den = mu_i - coupling * beta_prev;
            require_nonzero(den, std::abs(mu_i) + std::abs(coupling * beta_prev), "delta denominator");
            out.deltas.push_back(coupling * beta_prev * beta_prev / den);
        }

        const cplx den = dot(ak, state.weight) + mu_k * squared_norm(ak);
        require_nonzero(den, std::abs(dot(ak, state.weight)) + std::abs(mu_k) * squared_norm(ak), "new INR denominator");
        out.beta_new = -mu_k / den;
        out.inrs.push_back(out.beta_new);
        return out;
    }

    CMatrix reconstruct_implicit_vcm(const A2rcState &state, const ArrayModel &model)
    {
        CMatrix t = CMatrix::identity(model.size());
        for (std::size_t i = 0; i < state.implicit_inrs.size(); ++i)
            t = rank1_inverse_update(t, steering_vector(model, state.directions[i]), state.implicit_inrs[i]);
        return t;
    }

    std::pair<A2rcState, A2rcStepResult> a2rc_step(const A2rcState &state, const ArrayModel &model, Angle theta0,
                                                   Angle theta_k, double rho)
    {
        if (!std::isfinite(rho) || !(rho > 0.0) || rho > 1.0)
            fail(ErrorKind::InvalidArgument, "desired level must lie in (0, 1]");
        if (!theta0.in_domain() || !theta_k.in_domain())
            fail(ErrorKind::InvalidArgument, "directions must lie in [-90, 90] degrees");
        if (std::abs(theta0.rad() - theta_k.rad()) < 1e-12)
            fail(ErrorKind::InvalidArgument, "control direction coincides with the beam axis");
        if (state.weight.size() != model.size())
            fail(ErrorKind::DimensionMismatch, "weight vector size does not match the array");

        const CVector a0 = steering_vector(model, theta0);
        const CVector ak = steering_vector(model, theta_k);

        A2rcStepResult r;
        r.direction = theta_k;
        r.desired_level = rho;
        // Q_k has the same structure as H_k with v_k replaced by a(theta_k).
        r.circle = gamma_circle(state.weight, ak, a0, ak, rho);

        const cplx c = r.circle.center_c();
        const double c_norm = std::abs(c);
        if (c_norm <= 1e-14 * (1.0 + r.circle.radius))
            fail(ErrorKind::OriginCenter, "mu circle is centred on the origin; minimum-modulus mu is not unique");
        r.mu = c * (r.circle.near_offset() / c_norm);
        r.mu = polish_level_root(r.mu, state.weight, ak, a0, ak, rho);

        r.inr_update = implicit_inrs_update(state, model, theta_k, r.mu);

        A2rcState next;
        next.weight = state.weight + r.mu * ak;
        next.mu_history = state.mu_history;
        next.mu_history.push_back(r.mu);
        next.directions = state.directions;
        next.directions.push_back(theta_k);
        next.implicit_inrs = r.inr_update.inrs;

        r.weight_after = next.weight;
        r.achieved_level = response_ratio(next.weight, ak, a0);
        const CMatrix t = reconstruct_implicit_vcm(next, model);
        r.array_gain = std::norm(dot(next.weight, a0)) / std::abs(quad_form(t, next.weight, next.weight));
        return {std::move(next), std::move(r)};
    }

    FirstStepBranchReport check_first_step_branch(const ArrayModel &model, Angle theta0, Angle theta1, double rho1)
    {
        const CVector a0 = steering_vector(model, theta0);
        const CVector a1 = steering_vector(model, theta1);

        FirstStepBranchReport rep;
        rep.norm_ratio = squared_norm(a1) / squared_norm(a0);
        rep.branch_leq = rho1 <= rep.norm_ratio;

        const auto [vcm, opt] = oparc_step(VcmState::identity(model.size()), a0, model, theta0, theta1, rho1);
        const auto [st, base] = a2rc_step(A2rcState::initial(model, theta0), model, theta0, theta1, rho1);

        rep.mu1 = base.mu;
        rep.gamma_star = opt.gamma.gamma_star;
        rep.gamma_cross = opt.gamma.gamma_cross;
        const cplx predicted = rep.branch_leq ? rep.gamma_star : rep.gamma_cross;
        rep.deviation = std::abs(rep.mu1 - predicted);
        rep.agrees = rep.deviation <= 1e-9 * std::max(1.0, std::abs(predicted));
        return rep;
    }
}
