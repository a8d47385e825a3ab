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

#include "beamctl/session.hpp"
#include "beamctl/error.hpp"

#include <algorithm>
#include <cmath>

namespace beamctl
{
    Session::Session(ArrayModel model, Angle theta0, Method method, GridSpec j_grid)
        : model_(std::move(model)), theta0_(theta0), method_(method), j_grid_(j_grid)
    {
        if (!theta0_.in_domain())
            fail(ErrorKind::InvalidArgument, "theta0 must lie in [-90, 90] degrees");
        j_grid_.validate();

        Node first;
        first.weight = steering_vector(model_, theta0_);
        if (method_ == Method::A2rc)
            first.a2rc = A2rcState::initial(model_, theta0_);
        else
            first.vcm = VcmState::identity(model_.size());
        chain_.push_back(std::move(first));
    }

    const StepSummary &Session::step(const StepRequest &request)
    {
        if (!std::isfinite(request.theta_deg))
            fail(ErrorKind::InvalidArgument, "theta_deg must be finite");
        const double rho = level_from_db(request.rho_db);
        const Angle theta_k = Angle::from_deg(request.theta_deg);
        const Node &prev = chain_.back();

        Node next;
        StepSummary s;
        s.method = method_;
        s.index = step_count() + 1;
        s.request = request;

        if (method_ == Method::A2rc)
        {
            auto [state, r] = a2rc_step(prev.a2rc, model_, theta0_, theta_k, rho);
            next.weight = state.weight;
            next.a2rc = std::move(state);
            s.achieved_level_db = level_to_db(r.achieved_level);
            s.gain_linear = r.array_gain;
            s.a2rc = std::move(r);
        }
        else
        {
            auto [state, r] = method_ == Method::Oparc ? oparc_step(prev.vcm, prev.weight, model_, theta0_, theta_k, rho)
                                                       : parc_step(prev.vcm, prev.weight, model_, theta0_, theta_k, rho);
            next.weight = r.weight_after;
            next.vcm = std::move(state);
            s.achieved_level_db = level_to_db(r.achieved_level);
            s.gain_linear = r.array_gain;
            s.control = std::move(r);
        }

        // D over every earlier control point, J against the previous pattern.
        for (const auto &earlier : summaries_)
        {
            const Angle theta_i = Angle::from_deg(earlier.request.theta_deg);
            s.d_per_point_db.push_back(metric_d(prev.weight, next.weight, model_, theta_i, theta0_));
        }
        s.metrics.d_db = s.d_per_point_db.empty() ? 0.0
                                                  : *std::max_element(s.d_per_point_db.begin(), s.d_per_point_db.end());
        s.metrics.j_rms = metric_j(prev.weight, next.weight, model_, theta0_, j_grid_);
        s.metrics.gain_db = 10.0 * std::log10(s.gain_linear);

        chain_.push_back(std::move(next));
        summaries_.push_back(std::move(s));
        return summaries_.back();
    }

    bool Session::undo()
    {
        if (summaries_.empty())
            return false;
        chain_.pop_back();
        summaries_.pop_back();
        return true;
    }

    std::vector<StepRequest> Session::requests() const
    {
        std::vector<StepRequest> out;
        out.reserve(summaries_.size());
        for (const auto &s : summaries_)
            out.push_back(s.request);
        return out;
    }

    const CVector &Session::weight_at(std::size_t k) const
    {
        if (k >= chain_.size())
            fail(ErrorKind::InvalidArgument, "step index out of range");
        return chain_[k].weight;
    }

    double Session::gain_linear() const
    {
        return summaries_.empty() ? squared_norm(chain_.front().weight) : summaries_.back().gain_linear;
    }
}
