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
#include "beamctl/service.hpp"

#include <httplib.h>

namespace beamctl
{
    void serve(SessionService &service, const std::string &host, int port,
               const std::optional<std::filesystem::path> &static_dir)
    {
        httplib::Server server;

        auto forward = [&service](const httplib::Request &req, httplib::Response &res)
        {
            std::map<std::string, std::string> query;
            for (const auto &[k, v] : req.params)
                query.emplace(k, v);
            const HttpReply r = service.handle(req.method, req.path, query, req.body);
            res.status = r.status;
            res.set_content(r.body, "application/json");
        };

        const std::string pattern = R"(/sessions(/.*)?)";
        server.Get(pattern, forward);
        server.Post(pattern, forward);
        server.Delete(pattern, forward);

        if (static_dir && !server.set_mount_point("/", static_dir->string()))
            fail(ErrorKind::Config, "static directory " + static_dir->string() + " does not exist");

        if (!server.bind_to_port(host, port))
            fail(ErrorKind::Config, "cannot bind " + host + ":" + std::to_string(port) + " (port in use?)");
        server.listen_after_bind();
    }
}
