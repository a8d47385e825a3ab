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

#include "wire.hpp"
#include "beamctl/error.hpp"

namespace beamctl::detail
{
    json circle_to_json(const CircleR2 &circle)
    {
        return json{{"c", {circle.center[0], circle.center[1]}}, {"R", circle.radius}};
    }

    json step_to_json(const StepSummary &s)
    {
        json out{{"index", s.index},
                 {"method", to_string(s.method)},
                 {"theta_deg", s.request.theta_deg},
                 {"rho_db", s.request.rho_db},
                 {"achieved_level_db", s.achieved_level_db},
                 {"gain_db", s.metrics.gain_db},
                 {"metrics", {{"d_db", s.metrics.d_db}, {"d_per_point_db", s.d_per_point_db}, {"j_rms", s.metrics.j_rms}}}};

        if (s.control)
        {
            const ControlStepResult &r = *s.control;
            const GammaSelection &g = r.gamma;
            const BetaSelection &b = r.beta;
            out["gamma"] = {{"applied", complex_to_json(r.applied_gamma)},
                            {"star", complex_to_json(g.gamma_star)},
                            {"cross", complex_to_json(g.gamma_cross)},
                            {"a", complex_to_json(g.gamma_a)},
                            {"b", complex_to_json(g.gamma_b)},
                            {"zeta", g.zeta},
                            {"d", complex_to_json(g.d_point)}};
            out["beta"] = {{"applied", r.applied_beta},
                           {"star", b.beta_star},
                           {"cross", b.beta_cross},
                           {"l", b.beta_l},
                           {"r", b.beta_r}};
            out["circles"] = {{"gamma", circle_to_json(g.circle)}, {"beta", circle_to_json(b.circle)}};
            out["xi"] = {{"xi0", r.quartet.xi0},
                         {"xik", r.quartet.xik},
                         {"xic", complex_to_json(r.quartet.xic)},
                         {"xic_tilde", complex_to_json(r.quartet.xic_tilde)}};
        }
        if (s.a2rc)
        {
            const A2rcStepResult &r = *s.a2rc;
            json inrs = json::array(), deltas = json::array();
            for (cplx z : r.inr_update.inrs)
                inrs.push_back(complex_to_json(z));
            for (cplx z : r.inr_update.deltas)
                deltas.push_back(complex_to_json(z));
            out["mu"] = complex_to_json(r.mu);
            out["implicit_inrs"] = std::move(inrs);
            out["inr_deltas"] = std::move(deltas);
            out["circles"] = {{"mu", circle_to_json(r.circle)}};
        }
        return out;
    }

    json pattern_to_json(const PatternGrid &pattern, double theta0_deg, Method method, std::size_t step)
    {
        json levels = json::array();
        for (double v : pattern.levels_db)
            levels.push_back(clamp_db_for_export(v));
        return json{{"angles_deg", pattern.angles_deg},
                    {"levels_db", std::move(levels)},
                    {"meta", {{"theta0_deg", theta0_deg}, {"method", to_string(method)}, {"step", step}}}};
    }

    StepRequest step_request_from_json(const json &doc)
    {
        if (!doc.is_object())
            fail(ErrorKind::Config, "step must be an object with theta_deg and rho_db");
        return {require_number(doc, "theta_deg", "step"), require_number(doc, "rho_db", "step")};
    }
}
