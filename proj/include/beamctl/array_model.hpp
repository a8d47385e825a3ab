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

#ifndef BEAMCTL_ARRAY_MODEL_HPP
#define BEAMCTL_ARRAY_MODEL_HPP

#include "beamctl/numerics.hpp"

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace beamctl
{
    // Direction measured from broadside. Stored in radians; degrees only at
    // API boundaries.
    class Angle
    {
    public:
        constexpr Angle() = default;
        static constexpr Angle from_rad(double rad) { return Angle(rad); }
        static constexpr Angle from_deg(double deg) { return Angle(deg * std::numbers::pi / 180.0); }

        constexpr double rad() const noexcept { return rad_; }
        constexpr double deg() const noexcept { return rad_ * 180.0 / std::numbers::pi; }

        // -pi/2 <= value <= pi/2, with a little slack for degree round-off.
        bool in_domain() const noexcept;

        constexpr bool operator==(const Angle &) const = default;

    private:
        constexpr explicit Angle(double rad) : rad_(rad) {}
        double rad_ = 0.0;
    };

    enum class PatternAngleUnit
    {
        Radians,
        Degrees
    };

    // g(theta) = amp * cos(scale * theta)
    struct ElementSpec
    {
        double position_x = 0.0; // [m] along the array axis
        double pattern_amp = 1.0;
        double pattern_scale = 0.0;

        bool operator==(const ElementSpec &) const = default;
    };

    class ArrayModel
    {
    public:
        static constexpr double default_wave_speed = 3e8;

        // phase_sign selects exp(phase_sign * j * omega * tau); -1 is the
        // conventional exp(-j omega tau).
        ArrayModel(std::vector<ElementSpec> elements, double omega, double wave_speed = default_wave_speed,
                   PatternAngleUnit unit = PatternAngleUnit::Radians, int phase_sign = -1);

        std::size_t size() const noexcept { return elements_.size(); }
        const std::vector<ElementSpec> &elements() const noexcept { return elements_; }
        double omega() const noexcept { return omega_; }
        double wave_speed() const noexcept { return wave_speed_; }
        double wavelength() const noexcept;
        PatternAngleUnit pattern_angle_unit() const noexcept { return unit_; }
        int phase_sign() const noexcept { return phase_sign_; }

        double element_gain(std::size_t n, Angle theta) const;

        bool operator==(const ArrayModel &) const = default;

    private:
        std::vector<ElementSpec> elements_;
        double omega_;
        double wave_speed_;
        PatternAngleUnit unit_;
        int phase_sign_;
    };

    // a(theta)_n = g_n(theta) * exp(-j * omega * x_n * sin(theta) / c)
    CVector steering_vector(const ArrayModel &model, Angle theta);

    // Isotropic uniform linear array, x_n = (n-1) * spacing.
    ArrayModel make_ula(std::size_t n, double spacing, double omega);

    // Parses the array config document:
    //   { "omega_rad_s", "wave_speed_m_s"?, "pattern_angle_unit"?, "phase_sign"?,
    //     "elements": [ { "x_m", "amp"?, "scale"? } ] }
    ArrayModel load_array_config(std::string_view json_text);
    ArrayModel load_array_config_file(const std::string &path);

    // Arrays shipped with the library, addressed by name ("nla11").
    bool is_bundled_array(std::string_view name);
    ArrayModel bundled_array(std::string_view name);
    std::string bundled_array_json(std::string_view name);

    // Serializes back to the config document format.
    std::string array_config_json(const ArrayModel &model);
}

#endif
