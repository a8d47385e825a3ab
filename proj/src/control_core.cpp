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

#include "beamctl/control_core.hpp"
#include "beamctl/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace beamctl
{
    namespace
    {
        // Strips floating-point dust from quantities that are real in exact arithmetic.
        double real_part_checked(cplx z, const char *what)
        {
            if (std::abs(z.imag()) > 1e-9 * std::abs(z) + 1e-14)
                fail(ErrorKind::NotHermitian, std::string(what) + " is not real (imaginary residue " +
                                                  std::to_string(z.imag()) + ")");
            return z.real();
        }

        void require_level(double rho)
        {
            if (!std::isfinite(rho) || !(rho > 0.0))
                fail(ErrorKind::InvalidArgument, "desired level must be finite and > 0");
            if (rho > 1.0)
                fail(ErrorKind::InvalidArgument,
                     "desired level " + std::to_string(rho) + " exceeds 1 (0 dB); only levels at or below the beam-axis response are supported");
        }

        void require_directions(Angle theta0, Angle theta_k)
        {
            if (!theta0.in_domain() || !theta_k.in_domain())
                fail(ErrorKind::InvalidArgument, "directions must lie in [-90, 90] degrees");
            if (std::abs(theta0.rad() - theta_k.rad()) < 1e-12)
                fail(ErrorKind::InvalidArgument, "control direction coincides with the beam axis");
        }

        void require_dims(const VcmState &state, const ArrayModel &model)
        {
            if (state.t_inv.rows() != model.size() || state.t.rows() != model.size())
                fail(ErrorKind::DimensionMismatch, "VCM size does not match the array");
        }

        std::pair<VcmState, ControlStepResult> controlled_step(const VcmState &state, const CVector &w_prev,
                                                               const ArrayModel &model, Angle theta0,
                                                               Angle theta_k, double rho, Method method)
        {
            require_level(rho);
            require_directions(theta0, theta_k);
            require_dims(state, model);
            if (w_prev.size() != model.size())
                fail(ErrorKind::DimensionMismatch, "weight vector size does not match the array");

            const CVector a0 = steering_vector(model, theta0);
            const CVector ak = steering_vector(model, theta_k);
            const XiQuartet q = compute_xi(state, a0, ak);
            const CVector v = state.t_inv * ak;

            ControlStepResult r;
            r.method = method;
            r.direction = theta_k;
            r.desired_level = rho;
            r.quartet = q;
            r.gamma = select_gamma(q, gamma_circle(w_prev, v, a0, ak, rho), rho);
            r.beta = select_beta(q, beta_circle(q, rho), rho, false);

            const bool star_is_a = r.gamma.star_is_a();
            r.gamma.gamma_a = polish_level_root(r.gamma.gamma_a, w_prev, v, a0, ak, rho);
            r.gamma.gamma_b = polish_level_root(r.gamma.gamma_b, w_prev, v, a0, ak, rho);
            r.gamma.gamma_star = star_is_a ? r.gamma.gamma_a : r.gamma.gamma_b;
            r.gamma.gamma_cross = star_is_a ? r.gamma.gamma_b : r.gamma.gamma_a;

            r.applied_gamma = method == Method::Parc ? r.gamma.gamma_cross : r.gamma.gamma_star;
            r.applied_beta = real_part_checked(gamma_to_beta(r.applied_gamma, q), "INR");
            const double scale = real_part_checked(r.applied_gamma / q.xic, "gamma / xi_c");

            VcmState next;
            next.t_inv = rank1_inverse_update(state.t_inv, v, scale);
            next.t = rank1_inverse_update(state.t, ak, r.applied_beta);
            next.interferences = state.interferences;
            next.interferences.push_back({theta_k, r.applied_beta});
            next.step_count = state.step_count + 1;

            r.weight_after = w_prev + r.applied_gamma * v;
            r.achieved_level = response_ratio(r.weight_after, ak, a0);
            r.array_gain = std::abs(quad_form(next.t_inv, a0, a0));
            return {std::move(next), std::move(r)};
        }
    }

    std::string_view to_string(Method method)
    {
        switch (method)
        {
        case Method::Oparc:
            return "oparc";
        case Method::Parc:
            return "parc";
        case Method::A2rc:
            return "a2rc";
        }
        return "unknown";
    }

    Method method_from_string(std::string_view name)
    {
        if (name == "oparc")
            return Method::Oparc;
        if (name == "parc")
            return Method::Parc;
        if (name == "a2rc")
            return Method::A2rc;
        fail(ErrorKind::InvalidArgument, "unknown method '" + std::string(name) + "' (expected oparc, parc or a2rc)");
    }

    double level_from_db(double rho_db)
    {
        if (!std::isfinite(rho_db))
            fail(ErrorKind::InvalidArgument, "rho_db must be finite");
        if (rho_db > 0.0)
            fail(ErrorKind::InvalidArgument,
                 "rho_db = " + std::to_string(rho_db) + " dB is above 0 dB; only levels at or below the beam-axis response are supported");
        return std::pow(10.0, rho_db / 10.0);
    }

    double level_to_db(double rho) { return 10.0 * std::log10(rho); }

    VcmState VcmState::identity(std::size_t n)
    {
        return VcmState{CMatrix::identity(n), CMatrix::identity(n), {}, 0};
    }

    CMatrix VcmState::reconstruct_t(const ArrayModel &model) const
    {
        CMatrix t = CMatrix::identity(model.size());
        for (const auto &i : interferences)
            t = rank1_inverse_update(t, steering_vector(model, i.direction), i.inr);
        return t;
    }

    cplx CircleR2::point(double phi) const
    {
        return center_c() + std::polar(radius, phi);
    }

    cplx polish_level_root(cplx gamma, const CVector &w_prev, const CVector &v, const CVector &a0, const CVector &ak,
                           double rho)
    {
        const double t0 = std::abs(gamma);
        if (t0 == 0.0)
            return gamma;
        const cplx u = gamma / t0;
        const cplx p = dot(w_prev, ak), r = dot(w_prev, a0);
        const cplx alpha = std::conj(u) * dot(v, ak), beta = std::conj(u) * dot(v, a0);
        auto f = [&](double t) { return std::norm(p + t * alpha) - rho * std::norm(r + t * beta); };

        double t = t0, ft = f(t);
        for (int it = 0; it < 4 && ft != 0.0; ++it)
        {
            const double df = 2.0 * (std::conj(p + t * alpha) * alpha).real() - 2.0 * rho * (std::conj(r + t * beta) * beta).real();
            if (df == 0.0)
                break;
            const double tn = t - ft / df;
            const double fn = f(tn);
            if (!(std::abs(fn) < std::abs(ft)))
                break;
            t = tn;
            ft = fn;
        }
        return t * u;
    }

    double CircleR2::near_offset() const
    {
        const double c_norm = std::abs(center_c());
        const double far = c_norm + radius;
        if (std::isfinite(origin_power) && far > 0.0)
            return origin_power / far;
        return c_norm - radius;
    }

    double CircleR2::distance(cplx z) const
    {
        return std::abs(std::abs(z - center_c()) - radius);
    }

    XiQuartet compute_xi(const VcmState &state, const CVector &a0, const CVector &ak)
    {
        if (state.t_inv.rows() != a0.size() || ak.size() != a0.size())
            fail(ErrorKind::DimensionMismatch, "compute_xi: dimensions do not conform");
        if (hermitian_defect(state.t_inv) > 1e-10 * std::max(1.0, max_abs(state.t_inv)))
            fail(ErrorKind::NotHermitian, "compute_xi: T^-1 is not Hermitian");
        const CVector v0 = state.t_inv * a0;
        const CVector vk = state.t_inv * ak;
        XiQuartet q;
        q.xi0 = dot(a0, v0).real();
        q.xik = dot(ak, vk).real();
        q.xic = dot(ak, v0);
        q.xic_tilde = dot(a0, vk);
        return q;
    }

    std::array<std::array<cplx, 2>, 2> control_matrix(const CVector &w_prev, const CVector &v_k,
                                                      const CVector &a0, const CVector &ak, double rho)
    {
        const std::array<cplx, 2> pk{dot(ak, w_prev), dot(ak, v_k)};
        const std::array<cplx, 2> p0{dot(a0, w_prev), dot(a0, v_k)};
        std::array<std::array<cplx, 2>, 2> h{};
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t l = 0; l < 2; ++l)
                h[i][l] = std::conj(pk[i]) * pk[l] - rho * std::conj(p0[i]) * p0[l];
        return h;
    }

    CircleR2 gamma_circle(const CVector &w_prev, const CVector &v_k, const CVector &a0, const CVector &ak, double rho)
    {
        require_level(rho);
        const auto h = control_matrix(w_prev, v_k, a0, ak, rho);
        double scale = 0.0;
        for (const auto &row : h)
            for (const auto &x : row)
                scale = std::max(scale, std::abs(x));

        const double h22 = h[1][1].real();
        if (std::abs(h22) <= 1e-12 * scale)
            fail(ErrorKind::DegenerateControl, "gamma circle degenerates to a line (H22 ~ 0)");

        const double neg_det = std::norm(h[0][1]) - h[0][0].real() * h22;
        if (neg_det < -1e-12 * scale * scale)
            fail(ErrorKind::NegativeDiscriminant, "no gamma achieves the requested level (-det H < 0)");

        CircleR2 c;
        c.center = {-h[0][1].real() / h22, h[0][1].imag() / h22};
        c.radius = std::sqrt(std::max(neg_det, 0.0)) / std::abs(h22);
        c.origin_power = h[0][0].real() / h22;
        return c;
    }

    GammaSelection select_gamma(const XiQuartet &quartet, const CircleR2 &circle, double rho)
    {
        GammaSelection s;
        s.circle = circle;
        s.chi = quartet.xik - rho * quartet.xi0;
        s.d_point = -quartet.xi0 / std::conj(quartet.xic);

        const cplx c = circle.center_c();
        const double c_norm = std::abs(c);
        // Unit direction of the line through the origin and the centre. With the
        // centre at the origin the line through d is used instead.
        const cplx u = c_norm > 1e-14 * (c_norm + circle.radius) ? c / c_norm : -s.d_point / std::abs(s.d_point);

        s.gamma_a = circle.near_offset() * u;
        s.gamma_b = (c_norm + circle.radius) * u;

        // O, c and d are collinear, so comparing along u matches the
        // sign(c(1)) * sign(Re(d) - c(1)) test without the vertical-line corner case.
        const double along = (std::conj(u) * s.d_point).real() - c_norm;
        const double tie_tol = 1e-12 * std::max(std::abs(s.d_point), c_norm);
        s.zeta = std::abs(along) <= tie_tol ? 0.0 : (along > 0.0 ? 1.0 : -1.0);

        const bool pick_a = s.zeta >= 0.0;
        s.gamma_star = pick_a ? s.gamma_a : s.gamma_b;
        s.gamma_cross = pick_a ? s.gamma_b : s.gamma_a;
        return s;
    }

    CircleR2 beta_circle(const XiQuartet &quartet, double rho)
    {
        require_level(rho);
        const double abs_xic2 = std::norm(quartet.xic);
        const double den = abs_xic2 - quartet.xi0 * quartet.xik;
        if (std::abs(den) <= 1e-14 * std::max(abs_xic2, std::abs(quartet.xi0 * quartet.xik)))
            fail(ErrorKind::DegenerateControl, "beta circle is degenerate (|xi_c|^2 == xi0 xik)");
        CircleR2 c;
        c.center = {quartet.xi0 / den, 0.0};
        c.radius = std::abs(quartet.xic) / (std::sqrt(rho) * std::abs(den));
        return c;
    }

    BetaSelection select_beta(const XiQuartet &quartet, const CircleR2 &circle, double rho, bool pd_shortcut)
    {
        BetaSelection s;
        s.circle = circle;
        s.beta_r = circle.center[0] + circle.radius;
        s.beta_l = circle.center[0] - circle.radius;

        bool pick_r;
        if (pd_shortcut)
        {
            const double sr = std::sqrt(rho);
            const double abs_xic = std::abs(quartet.xic);
            s.beta_r = (abs_xic - sr * quartet.xi0) / (sr * (quartet.xi0 * quartet.xik - abs_xic * abs_xic));
            pick_r = true;
        }
        else
        {
            pick_r = -1.0 / quartet.xik > circle.center[0];
        }
        s.beta_star = pick_r ? s.beta_r : s.beta_l;
        s.beta_cross = pick_r ? s.beta_l : s.beta_r;
        return s;
    }

    cplx gamma_to_beta(cplx gamma, const XiQuartet &quartet)
    {
        const cplx den = quartet.xic + gamma * quartet.xik;
        if (std::abs(den) <= 1e-14 * (std::abs(quartet.xic) + std::abs(gamma * quartet.xik)))
            fail(ErrorKind::MappingPole, "gamma_to_beta: gamma sits on the mapping pole");
        return -gamma / den;
    }

    cplx beta_to_gamma(cplx beta, const XiQuartet &quartet)
    {
        const cplx den = 1.0 + beta * quartet.xik;
        if (std::abs(den) <= 1e-14 * (1.0 + std::abs(beta * quartet.xik)))
            fail(ErrorKind::MappingPole, "beta_to_gamma: beta sits on the mapping pole");
        return -beta * quartet.xic / den;
    }

    double response_ratio(const CVector &w, const CVector &a, const CVector &a0)
    {
        const double axis = std::abs(dot(w, a0));
        if (!(axis > 1e-14 * norm2(w) * norm2(a0)))
            fail(ErrorKind::BeamAxisNull, "weight vector has a null on the beam axis");
        const double r = std::abs(dot(w, a)) / axis;
        return r * r;
    }

    std::pair<VcmState, ControlStepResult> oparc_step(const VcmState &state, const CVector &w_prev,
                                                      const ArrayModel &model, Angle theta0, Angle theta_k,
                                                      double rho)
    {
        return controlled_step(state, w_prev, model, theta0, theta_k, rho, Method::Oparc);
    }

    std::pair<VcmState, ControlStepResult> parc_step(const VcmState &state, const CVector &w_prev,
                                                     const ArrayModel &model, Angle theta0, Angle theta_k,
                                                     double rho)
    {
        return controlled_step(state, w_prev, model, theta0, theta_k, rho, Method::Parc);
    }

    VcmState oparc_step_variant2(const VcmState &state, const ArrayModel &model, Angle theta0, Angle theta_k,
                                 double rho)
    {
        require_level(rho);
        require_directions(theta0, theta_k);
        require_dims(state, model);

        const CVector a0 = steering_vector(model, theta0);
        const CVector ak = steering_vector(model, theta_k);
        const XiQuartet q = compute_xi(state, a0, ak);
        const double beta = select_beta(q, beta_circle(q, rho), rho, false).beta_star;

        const double den = 1.0 + beta * q.xik;
        if (std::abs(den) <= 1e-14 * (1.0 + std::abs(beta * q.xik)))
            fail(ErrorKind::MappingPole, "variant-2 update hits the Woodbury pole");

        VcmState next;
        next.t = rank1_inverse_update(state.t, ak, beta);
        next.t_inv = rank1_inverse_update(state.t_inv, state.t_inv * ak, -beta / den);
        next.interferences = state.interferences;
        next.interferences.push_back({theta_k, beta});
        next.step_count = state.step_count + 1;
        return next;
    }

    CVector terminal_weight(const VcmState &state, const CVector &a0)
    {
        return solve(state.t, a0);
    }

    int predict_beta_sign(const VcmState &state, const CVector &w_prev, const CVector &ak, const CVector &a0,
                          double rho)
    {
        if (state.t_inv.rows() != w_prev.size())
            fail(ErrorKind::DimensionMismatch, "predict_beta_sign: dimensions do not conform");
        return rho <= response_ratio(w_prev, ak, a0) ? 1 : -1;
    }
}
