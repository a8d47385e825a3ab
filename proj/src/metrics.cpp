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

#include "beamctl/metrics.hpp"
#include "beamctl/control_core.hpp"
#include "beamctl/error.hpp"

#include <algorithm>
#include <cmath>

namespace beamctl
{
    std::size_t GridSpec::points() const
    {
        validate();
        return static_cast<std::size_t>(std::llround((to_deg - from_deg) / step_deg)) + 1;
    }

    Angle GridSpec::angle(std::size_t i) const
    {
        return Angle::from_deg(from_deg + static_cast<double>(i) * step_deg);
    }

    void GridSpec::validate() const
    {
        if (!std::isfinite(from_deg) || !std::isfinite(to_deg) || !std::isfinite(step_deg))
            fail(ErrorKind::InvalidArgument, "grid bounds must be finite");
        if (!(step_deg > 0.0))
            fail(ErrorKind::InvalidArgument, "grid step must be > 0");
        if (to_deg < from_deg)
            fail(ErrorKind::InvalidArgument, "grid upper bound is below the lower bound");
        if (from_deg < -90.0 - 1e-9 || to_deg > 90.0 + 1e-9)
            fail(ErrorKind::InvalidArgument, "grid must lie within [-90, 90] degrees");
    }

    double clamp_db_for_export(double level_db)
    {
        return std::isnan(level_db) ? export_floor_db : std::max(level_db, export_floor_db);
    }

    double normalized_response(const CVector &w, const ArrayModel &model, Angle theta, Angle theta0)
    {
        return response_ratio(w, steering_vector(model, theta), steering_vector(model, theta0));
    }

    double array_gain(const CVector &w, const CMatrix &t, const CVector &a0)
    {
        const double den = std::abs(quad_form(t, w, w));
        if (!(den > 1e-300))
            fail(ErrorKind::BeamAxisNull, "array gain: w^H T w vanishes");
        return std::norm(dot(w, a0)) / den;
    }

    double metric_d(const CVector &w1, const CVector &w2, const ArrayModel &model, Angle theta1, Angle theta0)
    {
        const double l1 = normalized_response(w1, model, theta1, theta0);
        const double l2 = normalized_response(w2, model, theta1, theta0);
        return std::abs(10.0 * std::log10(l2) - 10.0 * std::log10(l1));
    }

    std::vector<double> sample_levels(const CVector &w, const ArrayModel &model, Angle theta0, const GridSpec &grid)
    {
        const std::size_t n = grid.points();
        const CVector a0 = steering_vector(model, theta0);
        std::vector<double> levels(n);
        for (std::size_t i = 0; i < n; ++i)
            levels[i] = response_ratio(w, steering_vector(model, grid.angle(i)), a0);
        return levels;
    }

    double metric_j(const CVector &w1, const CVector &w2, const ArrayModel &model, Angle theta0, const GridSpec &grid)
    {
        const auto l1 = sample_levels(w1, model, theta0, grid);
        const auto l2 = sample_levels(w2, model, theta0, grid);
        double acc = 0.0;
        for (std::size_t i = 0; i < l1.size(); ++i)
            acc += (l2[i] - l1[i]) * (l2[i] - l1[i]);
        return std::sqrt(acc / static_cast<double>(l1.size()));
    }

    PatternGrid sample_pattern(const CVector &w, const ArrayModel &model, Angle theta0, const GridSpec &grid)
    {
        const auto levels = sample_levels(w, model, theta0, grid);
        PatternGrid p;
        p.angles_deg.reserve(levels.size());
        p.levels_db.reserve(levels.size());
        for (std::size_t i = 0; i < levels.size(); ++i)
        {
            p.angles_deg.push_back(grid.from_deg + static_cast<double>(i) * grid.step_deg);
            p.levels_db.push_back(10.0 * std::log10(levels[i]));
        }
        return p;
    }
}
