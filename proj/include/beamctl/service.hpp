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

#ifndef BEAMCTL_SERVICE_HPP
#define BEAMCTL_SERVICE_HPP

#include "beamctl/session.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

namespace beamctl
{
    struct HttpReply
    {
        int status = 200;
        std::string body; // JSON
    };

    // In-memory session store behind the HTTP API. Each session has a single
    // writer at a time; readers take an immutable snapshot and never block on
    // a running step.
    class SessionService
    {
    public:
        // With a persist dir every session is written through as <id>.json and
        // replayed on construction.
        explicit SessionService(std::optional<std::filesystem::path> persist_dir = std::nullopt);

        HttpReply handle(std::string_view method, std::string_view path,
                         const std::map<std::string, std::string> &query, std::string_view body);

        std::size_t session_count() const;

    private:
        struct Entry
        {
            std::string id;
            std::string array_spec; // JSON as received, replayed on restart
            std::mutex writer;
            std::shared_ptr<const Session> snapshot;
        };

        std::shared_ptr<Entry> find(const std::string &id) const;
        void persist(const Entry &entry, const Session &session) const;
        void replay();

        HttpReply create(std::string_view body);
        HttpReply add_step(const std::string &id, std::string_view body);
        HttpReply undo(const std::string &id);
        HttpReply show(const std::string &id) const;
        HttpReply pattern(const std::string &id, const std::map<std::string, std::string> &query) const;
        HttpReply remove(const std::string &id);

        std::optional<std::filesystem::path> persist_dir_;
        mutable std::shared_mutex map_mutex_;
        std::map<std::string, std::shared_ptr<Entry>> sessions_;
        std::size_t next_id_ = 1;
    };

    // Blocks until the server stops. static_dir, when given, is mounted at "/".
    void serve(SessionService &service, const std::string &host, int port,
               const std::optional<std::filesystem::path> &static_dir = std::nullopt);
}

#endif
