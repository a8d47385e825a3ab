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

#ifndef BEAMCTL_SESSION_HPP
#define BEAMCTL_SESSION_HPP

// One method on one array: an ordered chain of control steps. Shared by the
// experiment runner, the HTTP service and the Python module.

#include "beamctl/a2rc.hpp"
#include "beamctl/array_model.hpp"
#include "beamctl/control_core.hpp"
#include "beamctl/metrics.hpp"

#include <optional>
#include <vector>

namespace beamctl
{
    struct StepRequest
    {
        double theta_deg = 0.0;
        double rho_db = 0.0;

        bool operator==(const StepRequest &) const = default;
    };

    struct StepSummary
    {
        Method method = Method::Oparc;
        std::size_t index = 0; // 1-based
        StepRequest request;

        std::optional<ControlStepResult> control; // oparc / parc
        std::optional<A2rcStepResult> a2rc;

        double achieved_level_db = 0.0;
        double gain_linear = 0.0;
        StepMetrics metrics;
        std::vector<double> d_per_point_db; // one entry per earlier control point
    };

    class Session
    {
    public:
        // J is always evaluated on j_grid.
        Session(ArrayModel model, Angle theta0, Method method, GridSpec j_grid = {});

        // Appends one control step. Throws beamctl::Error and leaves the session untouched on failure.
        const StepSummary &step(const StepRequest &request);
        // Drops the last step; false when there is nothing to undo.
        bool undo();

        std::size_t step_count() const noexcept { return chain_.size() - 1; }
        const std::vector<StepSummary> &summaries() const noexcept { return summaries_; }
        std::vector<StepRequest> requests() const;

        const ArrayModel &model() const noexcept { return model_; }
        Angle theta0() const noexcept { return theta0_; }
        Method method() const noexcept { return method_; }
        const GridSpec &j_grid() const noexcept { return j_grid_; }

        const CVector &weight() const { return chain_.back().weight; }
        // Weight after step k (0 = quiescent).
        const CVector &weight_at(std::size_t k) const;
        double gain_linear() const;

        PatternGrid pattern(const GridSpec &grid = {}) const { return sample_pattern(weight(), model_, theta0_, grid); }

    private:
        struct Node
        {
            CVector weight;
            VcmState vcm;   // oparc / parc
            A2rcState a2rc; // a2rc
        };

        ArrayModel model_;
        Angle theta0_;
        Method method_;
        GridSpec j_grid_;
        std::vector<Node> chain_;
        std::vector<StepSummary> summaries_;
    };
}

#endif
