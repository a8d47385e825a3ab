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

#ifndef BEAMCTL_A2RC_HPP
#define BEAMCTL_A2RC_HPP

#include "beamctl/array_model.hpp"
#include "beamctl/control_core.hpp"
#include "beamctl/numerics.hpp"

#include <utility>
#include <vector>

namespace beamctl
{
    // Baseline that updates w_k = w_{k-1} + mu_k a(theta_k) with the minimum-modulus
    // mu on its level circle. The implicit INRs describe the VCM this weight
    // would correspond to: w_k = (I + A_k Diag(inrs) A_k^H)^-1 a(theta0).
    struct A2rcState
    {
        CVector weight;
        std::vector<cplx> mu_history;
        std::vector<Angle> directions;
        std::vector<cplx> implicit_inrs;

        static A2rcState initial(const ArrayModel &model, Angle theta0);
        std::size_t step_count() const noexcept { return mu_history.size(); }
    };

    struct ImplicitInrUpdate
    {
        std::vector<cplx> inrs;   // diag of the implicit Sigma after the step (length k)
        std::vector<cplx> deltas; // increments at the k-1 earlier directions
        cplx beta_new;            // INR newly assigned at theta_k
    };

    struct A2rcStepResult
    {
        Angle direction;
        double desired_level = 0.0;
        CircleR2 circle;
        cplx mu;
        ImplicitInrUpdate inr_update;
        CVector weight_after;
        double achieved_level = 0.0;
        double array_gain = 0.0; // |w^H a0|^2 / |w^H T w| with the implicit VCM
    };

    std::pair<A2rcState, A2rcStepResult> a2rc_step(const A2rcState &state, const ArrayModel &model, Angle theta0,
                                                   Angle theta_k, double rho);

    // Implicit INR bookkeeping for appending mu_k at theta_k to `state`.
    ImplicitInrUpdate implicit_inrs_update(const A2rcState &state, const ArrayModel &model, Angle theta_k, cplx mu_k);

    // I + A_k Diag(implicit_inrs) A_k^H
    CMatrix reconstruct_implicit_vcm(const A2rcState &state, const ArrayModel &model);

    struct FirstStepBranchReport
    {
        bool branch_leq = false; // rho1 <= ||a(theta1)||^2 / ||a(theta0)||^2
        double norm_ratio = 0.0;
        cplx mu1;
        cplx gamma_star;
        cplx gamma_cross;
        double deviation = 0.0; // |mu1 - predicted|
        bool agrees = false;
    };

    // First-step relation between the baseline and the optimal selection.
    FirstStepBranchReport check_first_step_branch(const ArrayModel &model, Angle theta0, Angle theta1, double rho1);
}

#endif
