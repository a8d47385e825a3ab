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

#ifndef BEAMCTL_WIRE_HPP
#define BEAMCTL_WIRE_HPP

// JSON shapes shared by the exports and the HTTP API. Angles in degrees,
// levels in dB.

#include "beamctl/metrics.hpp"
#include "beamctl/session.hpp"
#include "json_io.hpp"

namespace beamctl::detail
{
    json circle_to_json(const CircleR2 &circle);
    json step_to_json(const StepSummary &step);
    json pattern_to_json(const PatternGrid &pattern, double theta0_deg, Method method, std::size_t step);

    StepRequest step_request_from_json(const json &doc);
}

#endif
