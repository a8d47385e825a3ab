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

#ifndef BEAMCTL_ORACLE_HPP
#define BEAMCTL_ORACLE_HPP

// Brute-force validators for tests and the acceptance suite. Nothing in the
// production path links against this library.

#include "beamctl/array_model.hpp"
#include "beamctl/control_core.hpp"
#include "beamctl/numerics.hpp"

#include <utility>
#include <vector>

namespace beamctl::oracle
{
    inline constexpr std::size_t default_samples = 720;

    struct CircleScan
    {
        std::size_t samples = default_samples;
        cplx best_param;
        double best_objective = 0.0;
        std::vector<double> objectives; // one per sample, phi = 2 pi i / samples
    };

    // Maximizes G = |xi0 + gamma * xic_tilde| over gamma = c + R e^{j phi}.
    CircleScan scan_gamma_for_gain(const CircleR2 &circle, const XiQuartet &quartet,
                                   std::size_t samples = default_samples);

    struct InrArgmaxContext
    {
        CVector w_prev; // T_{k-1}^-1 a0
        CVector a0;
        CVector ak;
    };

    // Scans beta on its circle and evaluates, by direct matrix products,
    //   first:  |w^H a0|^2 / (w^H T_{k-1} w)
    //   second: |w^H a0|^2 / |w^H T_k w|,  T_k = T_{k-1} + beta ak ak^H
    // with w = w_prev + Psi(beta) T_{k-1}^-1 ak.
    std::pair<CircleScan, CircleScan> scan_beta_for_inr_argmax(const CircleR2 &circle, const VcmState &state_prev,
                                                          const InrArgmaxContext &context,
                                                          std::size_t samples = default_samples);

    // Closed-form value of the first INR-argmax objective as a function of beta.
    double inr_argmax_objective_closed_form(const XiQuartet &quartet, const CircleR2 &beta_circle, cplx beta);

    struct SpanCheck
    {
        double residual = 0.0;
        std::vector<cplx> coefficients; // in the order of `directions`
        bool rank_deficient = false;
    };

    // Least-squares projection of w_delta onto span{a(directions[i])}.
    SpanCheck span_decomposition_check(const CVector &w_delta, const std::vector<Angle> &directions,
                                       const ArrayModel &model);
}

#endif
