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

#include "beamctl/error.hpp"

namespace beamctl
{
    std::string_view to_string(ErrorKind kind)
    {
        switch (kind)
        {
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::NonFinite:
            return "NonFinite";
        case ErrorKind::Singular:
            return "Singular";
        case ErrorKind::NotHermitian:
            return "NotHermitian";
        case ErrorKind::InvalidArgument:
            return "InvalidArgument";
        case ErrorKind::DegenerateControl:
            return "DegenerateControl";
        case ErrorKind::NegativeDiscriminant:
            return "NegativeDiscriminant";
        case ErrorKind::MappingPole:
            return "MappingPole";
        case ErrorKind::OriginCenter:
            return "OriginCenter";
        case ErrorKind::BeamAxisNull:
            return "BeamAxisNull";
        case ErrorKind::Config:
            return "Config";
        case ErrorKind::NotFound:
            return "NotFound";
        }
        return "Unknown";
    }
}
