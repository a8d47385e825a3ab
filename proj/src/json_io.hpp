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

#ifndef BEAMCTL_JSON_IO_HPP
#define BEAMCTL_JSON_IO_HPP

// Internal helpers shared by the config loaders and the service layer.

#include "beamctl/array_model.hpp"
#include "beamctl/numerics.hpp"

#include <json.hpp>

namespace beamctl::detail
{
    using json = nlohmann::json;

    ArrayModel array_from_json(const json &doc);
    json array_to_json(const ArrayModel &model);

    // Accepts either a bundled asset name or an inline config object.
    ArrayModel resolve_array(const json &doc);

    double require_number(const json &obj, const char *key, const char *context);
    double number_or(const json &obj, const char *key, double fallback, const char *context);

    inline json complex_to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }
}

#endif
