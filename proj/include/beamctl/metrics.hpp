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

#ifndef BEAMCTL_METRICS_HPP
#define BEAMCTL_METRICS_HPP

#include "beamctl/array_model.hpp"
#include "beamctl/numerics.hpp"

#include <vector>

namespace beamctl
{
    // Uniform angular grid in degrees, endpoints included.
    struct GridSpec
    {
        double from_deg = -90.0;
        double to_deg = 90.0;
        double step_deg = 0.2;

        std::size_t points() const;
        Angle angle(std::size_t i) const;
        void validate() const;
    };

    struct PatternGrid
    {
        std::vector<double> angles_deg;
        std::vector<double> levels_db;
    };

    struct StepMetrics
    {
        double d_db = 0.0;
        double j_rms = 0.0;
        double gain_db = 0.0;
    };

    // Floor applied to exported dB levels only.
    inline constexpr double export_floor_db = -200.0;
    double clamp_db_for_export(double level_db);

    // L(theta, theta0) = |w^H a(theta)|^2 / |w^H a(theta0)|^2
    double normalized_response(const CVector &w, const ArrayModel &model, Angle theta, Angle theta0);

    // G = |w^H a0|^2 / |w^H T w|
    double array_gain(const CVector &w, const CMatrix &t, const CVector &a0);

    // |10 log10 L2(theta1) - 10 log10 L1(theta1)|
    double metric_d(const CVector &w1, const CVector &w2, const ArrayModel &model, Angle theta1, Angle theta0);

    // RMS of L2 - L1 (linear ratios) over the grid.
    double metric_j(const CVector &w1, const CVector &w2, const ArrayModel &model, Angle theta0,
                    const GridSpec &grid = {});

    PatternGrid sample_pattern(const CVector &w, const ArrayModel &model, Angle theta0, const GridSpec &grid = {});

    // Linear normalized responses over the grid (no dB conversion).
    std::vector<double> sample_levels(const CVector &w, const ArrayModel &model, Angle theta0,
                                      const GridSpec &grid = {});
}

#endif
