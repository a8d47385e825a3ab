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

#include "beamctl/array_model.hpp"
#include "beamctl/error.hpp"
#include "json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace beamctl
{
    namespace detail
    {
        extern const std::string_view nla11_json;
    }

    namespace
    {
        // Half a microradian of slack so that +/-90 deg survives the degree conversion.
        constexpr double domain_slack = 5e-7;
    }

    bool Angle::in_domain() const noexcept
    {
        return std::isfinite(rad_) && std::abs(rad_) <= std::numbers::pi / 2 + domain_slack;
    }

    ArrayModel::ArrayModel(std::vector<ElementSpec> elements, double omega, double wave_speed,
                           PatternAngleUnit unit, int phase_sign)
        : elements_(std::move(elements)), omega_(omega), wave_speed_(wave_speed), unit_(unit), phase_sign_(phase_sign)
    {
        if (elements_.size() < 2)
            fail(ErrorKind::Config, "array needs at least 2 elements, got " + std::to_string(elements_.size()));
        if (!(std::isfinite(omega_) && omega_ > 0.0))
            fail(ErrorKind::Config, "omega must be finite and > 0");
        if (!(std::isfinite(wave_speed_) && wave_speed_ > 0.0))
            fail(ErrorKind::Config, "wave speed must be finite and > 0");
        if (phase_sign_ != 1 && phase_sign_ != -1)
            fail(ErrorKind::Config, "phase_sign must be +1 or -1");
        for (std::size_t n = 0; n < elements_.size(); ++n)
        {
            const auto &e = elements_[n];
            if (!std::isfinite(e.position_x) || !std::isfinite(e.pattern_amp) || !std::isfinite(e.pattern_scale))
                fail(ErrorKind::Config, "element " + std::to_string(n + 1) + " has non-finite fields");
            if (!(e.pattern_amp > 0.0))
                fail(ErrorKind::Config, "element " + std::to_string(n + 1) + " needs amp > 0");
        }
    }

    double ArrayModel::wavelength() const noexcept
    {
        return 2.0 * std::numbers::pi * wave_speed_ / omega_;
    }

    double ArrayModel::element_gain(std::size_t n, Angle theta) const
    {
        const auto &e = elements_.at(n);
        const double arg = unit_ == PatternAngleUnit::Radians ? theta.rad() : theta.deg();
        return e.pattern_amp * std::cos(e.pattern_scale * arg);
    }

    CVector steering_vector(const ArrayModel &model, Angle theta)
    {
        const double k = model.omega() * std::sin(theta.rad()) / model.wave_speed();
        const double sign = static_cast<double>(model.phase_sign());
        CVector a(model.size());
        for (std::size_t n = 0; n < model.size(); ++n)
        {
            const double phase = sign * k * model.elements()[n].position_x;
            a[n] = model.element_gain(n, theta) * cplx(std::cos(phase), std::sin(phase));
        }
        return a;
    }

    ArrayModel make_ula(std::size_t n, double spacing, double omega)
    {
        if (!(spacing > 0.0))
            fail(ErrorKind::Config, "make_ula: spacing must be > 0");
        std::vector<ElementSpec> elements(n);
        for (std::size_t i = 0; i < n; ++i)
            elements[i] = ElementSpec{static_cast<double>(i) * spacing, 1.0, 0.0};
        return ArrayModel(std::move(elements), omega);
    }

    namespace detail
    {
        double require_number(const json &obj, const char *key, const char *context)
        {
            if (!obj.contains(key))
                fail(ErrorKind::Config, std::string(context) + ": missing field '" + key + "'");
            const auto &v = obj.at(key);
            if (!v.is_number())
                fail(ErrorKind::Config, std::string(context) + ": field '" + key + "' must be a number");
            const double d = v.get<double>();
            if (!std::isfinite(d))
                fail(ErrorKind::Config, std::string(context) + ": field '" + key + "' is not finite");
            return d;
        }

        double number_or(const json &obj, const char *key, double fallback, const char *context)
        {
            if (!obj.contains(key) || obj.at(key).is_null())
                return fallback;
            return require_number(obj, key, context);
        }

        ArrayModel array_from_json(const json &doc)
        {
            if (!doc.is_object())
                fail(ErrorKind::Config, "array config must be a JSON object");
            const double omega = require_number(doc, "omega_rad_s", "array config");
            const double speed = number_or(doc, "wave_speed_m_s", ArrayModel::default_wave_speed, "array config");

            PatternAngleUnit unit = PatternAngleUnit::Radians;
            if (doc.contains("pattern_angle_unit"))
            {
                const auto &u = doc.at("pattern_angle_unit");
                if (u == "radians")
                    unit = PatternAngleUnit::Radians;
                else if (u == "degrees")
                    unit = PatternAngleUnit::Degrees;
                else
                    fail(ErrorKind::Config, "array config: pattern_angle_unit must be \"radians\" or \"degrees\"");
            }

            int phase_sign = -1;
            if (doc.contains("phase_sign"))
            {
                const auto &p = doc.at("phase_sign");
                if (!p.is_number_integer() || (p.get<int>() != 1 && p.get<int>() != -1))
                    fail(ErrorKind::Config, "array config: phase_sign must be 1 or -1");
                phase_sign = p.get<int>();
            }

            if (!doc.contains("elements") || !doc.at("elements").is_array())
                fail(ErrorKind::Config, "array config: 'elements' must be an array");
            std::vector<ElementSpec> elements;
            for (const auto &e : doc.at("elements"))
            {
                if (!e.is_object())
                    fail(ErrorKind::Config, "array config: each element must be an object");
                elements.push_back(ElementSpec{require_number(e, "x_m", "array element"),
                                               number_or(e, "amp", 1.0, "array element"),
                                               number_or(e, "scale", 0.0, "array element")});
            }
            return ArrayModel(std::move(elements), omega, speed, unit, phase_sign);
        }

        json array_to_json(const ArrayModel &model)
        {
            json elements = json::array();
            for (const auto &e : model.elements())
                elements.push_back({{"x_m", e.position_x}, {"amp", e.pattern_amp}, {"scale", e.pattern_scale}});
            return json{{"omega_rad_s", model.omega()},
                        {"wave_speed_m_s", model.wave_speed()},
                        {"pattern_angle_unit", model.pattern_angle_unit() == PatternAngleUnit::Radians ? "radians" : "degrees"},
                        {"phase_sign", model.phase_sign()},
                        {"elements", std::move(elements)}};
        }

        ArrayModel resolve_array(const json &doc)
        {
            if (doc.is_string())
                return bundled_array(doc.get<std::string>());
            return array_from_json(doc);
        }
    }

    ArrayModel load_array_config(std::string_view json_text)
    {
        detail::json doc;
        try
        {
            doc = detail::json::parse(json_text);
        }
        catch (const detail::json::parse_error &e)
        {
            fail(ErrorKind::Config, std::string("array config is not valid JSON: ") + e.what());
        }
        return detail::array_from_json(doc);
    }

    ArrayModel load_array_config_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            fail(ErrorKind::Config, "cannot open array config '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return load_array_config(ss.str());
    }

    bool is_bundled_array(std::string_view name)
    {
        return name == "nla11";
    }

    std::string bundled_array_json(std::string_view name)
    {
        if (name == "nla11")
            return std::string(detail::nla11_json);
        fail(ErrorKind::Config, "unknown bundled array '" + std::string(name) + "'");
    }

    ArrayModel bundled_array(std::string_view name)
    {
        return load_array_config(bundled_array_json(name));
    }

    std::string array_config_json(const ArrayModel &model)
    {
        return detail::array_to_json(model).dump(2);
    }
}
