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

#ifndef BEAMCTL_CONTROL_CORE_HPP
#define BEAMCTL_CONTROL_CORE_HPP

#include "beamctl/array_model.hpp"
#include "beamctl/numerics.hpp"

#include <array>
#include <limits>
#include <utility>
#include <vector>

namespace beamctl
{
    enum class Method
    {
        Oparc,
        Parc,
        A2rc
    };

    std::string_view to_string(Method method);
    Method method_from_string(std::string_view name);

    // rho_db -> linear level, rejecting levels above 0 dB.
    double level_from_db(double rho_db);
    double level_to_db(double rho);

    // One virtual interference assigned by a control step.
    struct Interference
    {
        Angle direction;
        double inr = 0.0;
    };

    // Virtual covariance matrix T_k, its inverse, and the interferences that built it.
    struct VcmState
    {
        CMatrix t_inv;
        CMatrix t;
        std::vector<Interference> interferences;
        std::size_t step_count = 0;

        // T_0 = I
        static VcmState identity(std::size_t n);

        // I + A Sigma A^H rebuilt from the interference list.
        CMatrix reconstruct_t(const ArrayModel &model) const;
    };

    // The four quadratic forms against T_{k-1}^{-1}:
    //   xi0 = a0^H T^-1 a0, xik = ak^H T^-1 ak, xic = ak^H T^-1 a0, xic_tilde = a0^H T^-1 ak
    struct XiQuartet
    {
        double xi0 = 0.0;
        double xik = 0.0;
        cplx xic;
        cplx xic_tilde;
    };

    struct CircleR2
    {
        std::array<double, 2> center{0.0, 0.0};
        double radius = 0.0;
        // |c|^2 - R^2 when the circle came from its implicit equation; NaN otherwise.
        double origin_power = std::numeric_limits<double>::quiet_NaN();

        cplx center_c() const { return {center[0], center[1]}; }
        // |c| - R without cancellation when origin_power is known.
        double near_offset() const;
        cplx point(double phi) const;
        // Distance of z from the circle, i.e. | |z - c| - R |.
        double distance(cplx z) const;
    };

    struct GammaSelection
    {
        CircleR2 circle;
        cplx gamma_a;     // near intersection of the line O-c with the circle
        cplx gamma_b;     // far intersection
        double zeta = 0.0;
        cplx d_point;     // -xi0 / conj(xic)
        double chi = 0.0; // xik - rho xi0
        cplx gamma_star;  // gain-maximizing choice
        cplx gamma_cross; // the other intersection

        bool star_is_a() const { return gamma_star == gamma_a; }
    };

    struct BetaSelection
    {
        CircleR2 circle;
        double beta_l = 0.0;
        double beta_r = 0.0;
        double beta_star = 0.0;
        double beta_cross = 0.0;
    };

    struct ControlStepResult
    {
        Method method = Method::Oparc;
        Angle direction;
        double desired_level = 0.0; // linear rho
        XiQuartet quartet;
        GammaSelection gamma;
        BetaSelection beta;
        cplx applied_gamma;  // gamma_star for OPARC, gamma_cross for PARC
        double applied_beta = 0.0;
        CVector weight_after;
        double achieved_level = 0.0;
        double array_gain = 0.0; // linear, |a0^H T_k^-1 a0|
    };

    XiQuartet compute_xi(const VcmState &state, const CVector &a0, const CVector &ak);

    // H_k = [w v]^H (ak ak^H - rho a0 a0^H) [w v]
    std::array<std::array<cplx, 2>, 2> control_matrix(const CVector &w_prev, const CVector &v_k,
                                                      const CVector &a0, const CVector &ak, double rho);

    // Circle of gammas with L(theta_k, theta0) = rho for w = w_prev + gamma v_k.
    CircleR2 gamma_circle(const CVector &w_prev, const CVector &v_k, const CVector &a0, const CVector &ak, double rho);

    GammaSelection select_gamma(const XiQuartet &quartet, const CircleR2 &circle, double rho);

    CircleR2 beta_circle(const XiQuartet &quartet, double rho);

    // pd_shortcut: caller asserts T_{k-1} is positive definite, beta_star = beta_r in closed form.
    BetaSelection select_beta(const XiQuartet &quartet, const CircleR2 &circle, double rho, bool pd_shortcut);

    cplx gamma_to_beta(cplx gamma, const XiQuartet &quartet);
    cplx beta_to_gamma(cplx beta, const XiQuartet &quartet);

    // Normalized response |w^H a|^2 / |w^H a0|^2 with the beam-axis null guard.
    // Newton refinement of a circle intersection along its own radial line, using the
    // response constraint evaluated directly rather than through H. Returns gamma unchanged
    // when it is zero or when no step reduces the residual.
    cplx polish_level_root(cplx gamma, const CVector &w_prev, const CVector &v, const CVector &a0, const CVector &ak,
                           double rho);

    double response_ratio(const CVector &w, const CVector &a, const CVector &a0);

    std::pair<VcmState, ControlStepResult> oparc_step(const VcmState &state, const CVector &w_prev,
                                                      const ArrayModel &model, Angle theta0, Angle theta_k,
                                                      double rho);

    // Same machinery, but applies the gain-inferior circle intersection.
    std::pair<VcmState, ControlStepResult> parc_step(const VcmState &state, const CVector &w_prev,
                                                     const ArrayModel &model, Angle theta0, Angle theta_k,
                                                     double rho);

    // Weight-free variant: only the VCM is advanced.
    VcmState oparc_step_variant2(const VcmState &state, const ArrayModel &model, Angle theta0, Angle theta_k,
                                 double rho);

    // Solves T_k w = a(theta0).
    CVector terminal_weight(const VcmState &state, const CVector &a0);

    // +1 when rho does not exceed the current level at theta_k (beta_star >= 0), -1 otherwise.
    int predict_beta_sign(const VcmState &state, const CVector &w_prev, const CVector &ak, const CVector &a0,
                          double rho);
}

#endif
