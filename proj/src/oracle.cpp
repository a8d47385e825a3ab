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

#include "beamctl/oracle.hpp"
#include "beamctl/error.hpp"

#include <cmath>
#include <numbers>

namespace beamctl::oracle
{
    namespace
    {
        double phi_of(std::size_t i, std::size_t samples)
        {
            return 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(samples);
        }

        void require_samples(std::size_t samples)
        {
            if (samples < 36)
                fail(ErrorKind::InvalidArgument, "circle scans need at least 36 samples");
        }

        void keep_best(CircleScan &scan, cplx param, double objective)
        {
            scan.objectives.push_back(objective);
            if (scan.objectives.size() == 1 || objective > scan.best_objective)
            {
                scan.best_objective = objective;
                scan.best_param = param;
            }
        }
    }

    CircleScan scan_gamma_for_gain(const CircleR2 &circle, const XiQuartet &quartet, std::size_t samples)
    {
        require_samples(samples);
        CircleScan scan;
        scan.samples = samples;
        scan.objectives.reserve(samples);
        for (std::size_t i = 0; i < samples; ++i)
        {
            const cplx gamma = circle.point(phi_of(i, samples));
            keep_best(scan, gamma, std::abs(quartet.xi0 + gamma * quartet.xic_tilde));
        }
        return scan;
    }

    std::pair<CircleScan, CircleScan> scan_beta_for_inr_argmax(const CircleR2 &circle, const VcmState &state_prev,
                                                          const InrArgmaxContext &context, std::size_t samples)
    {
        require_samples(samples);
        const XiQuartet q = compute_xi(state_prev, context.a0, context.ak);
        const CVector v = state_prev.t_inv * context.ak;

        CircleScan previous, updated;
        previous.samples = updated.samples = samples;
        for (std::size_t i = 0; i < samples; ++i)
        {
            const cplx beta = circle.point(phi_of(i, samples));
            const CVector w = context.w_prev + beta_to_gamma(beta, q) * v;
            const double num = std::norm(dot(w, context.a0));

            keep_best(previous, beta, num / std::abs(quad_form(state_prev.t, w, w)));

            const CMatrix t_k = rank1_inverse_update(state_prev.t, context.ak, beta);
            keep_best(updated, beta, num / std::abs(quad_form(t_k, w, w)));
        }
        return {previous, updated};
    }

    double inr_argmax_objective_closed_form(const XiQuartet &quartet, const CircleR2 &beta_circle, cplx beta)
    {
        const double gap = quartet.xi0 * quartet.xik - std::norm(quartet.xic);
        const double r2 = beta_circle.radius * beta_circle.radius;
        const double num = gap / quartet.xik * r2;
        const double den = std::norm(beta + 1.0 / quartet.xik) +
                           std::norm(quartet.xic) / (gap * quartet.xik * quartet.xik);
        return num / den;
    }

    SpanCheck span_decomposition_check(const CVector &w_delta, const std::vector<Angle> &directions,
                                       const ArrayModel &model)
    {
        if (directions.empty())
            fail(ErrorKind::InvalidArgument, "span check needs at least one direction");

        const std::size_t k = directions.size();
        std::vector<CVector> q;
        std::vector<std::size_t> kept;
        // r(j, l) for kept column j against original column l
        std::vector<std::vector<cplx>> r;

        SpanCheck out;
        for (std::size_t l = 0; l < k; ++l)
        {
            CVector col = steering_vector(model, directions[l]);
            const double original = norm2(col);
            std::vector<cplx> coeffs(q.size());
            for (std::size_t j = 0; j < q.size(); ++j)
            {
                coeffs[j] = dot(q[j], col);
                col -= coeffs[j] * q[j];
            }
            const double rest = norm2(col);
            if (rest <= 1e-10 * original)
            {
                out.rank_deficient = true;
                continue;
            }
            for (std::size_t j = 0; j < q.size(); ++j)
                r[j].resize(k), r[j][l] = coeffs[j];
            col *= 1.0 / rest;
            q.push_back(std::move(col));
            r.emplace_back(k);
            r.back()[l] = rest;
            kept.push_back(l);
        }

        std::vector<cplx> rhs(q.size());
        CVector residual = w_delta;
        for (std::size_t j = 0; j < q.size(); ++j)
        {
            rhs[j] = dot(q[j], w_delta);
            residual -= rhs[j] * q[j];
        }
        out.residual = norm2(residual);

        // Back substitution over the kept columns.
        out.coefficients.assign(k, cplx{0.0, 0.0});
        for (std::size_t j = q.size(); j-- > 0;)
        {
            cplx s = rhs[j];
            for (std::size_t m = j + 1; m < q.size(); ++m)
                s -= r[j][kept[m]] * out.coefficients[kept[m]];
            out.coefficients[kept[j]] = s / r[j][kept[j]];
        }
        return out;
    }
}
