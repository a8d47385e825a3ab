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

#ifndef BEAMCTL_ERROR_HPP
#define BEAMCTL_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace beamctl
{
    // Failure categories surfaced by the engine. The HTTP layer maps every kind
    // except NotFound to 422 semantics.
    enum class ErrorKind
    {
        DimensionMismatch,
        NonFinite,
        Singular,
        NotHermitian,
        InvalidArgument,    // bad rho, theta_k == theta0, out-of-domain angle
        DegenerateControl,  // H22 / Q22 ~ 0, or |xi_c|^2 == xi0 xik
        NegativeDiscriminant,
        MappingPole,        // gamma <-> beta mapping hits its pole
        OriginCenter,       // A2RC circle centred on the origin
        BeamAxisNull,       // w^H a(theta0) ~ 0
        Config,             // schema / validation errors in config documents
        NotFound
    };

    std::string_view to_string(ErrorKind kind);

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorKind kind, const std::string &message)
            : std::runtime_error(message), kind_(kind) {}

        ErrorKind kind() const noexcept { return kind_; }

    private:
        ErrorKind kind_;
    };

    [[noreturn]] inline void fail(ErrorKind kind, const std::string &message)
    {
        throw Error(kind, message);
    }
}

#endif
