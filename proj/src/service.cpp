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

#include "beamctl/service.hpp"
#include "beamctl/error.hpp"
#include "wire.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace beamctl
{
    using detail::json;

    namespace
    {
        HttpReply reply(int status, const json &body) { return {status, body.dump()}; }

        HttpReply error_reply(int status, std::string_view kind, const std::string &message)
        {
            return reply(status, json{{"error", {{"kind", kind}, {"message", message}}}});
        }

        HttpReply from_error(const Error &e)
        {
            switch (e.kind())
            {
            case ErrorKind::NotFound:
                return error_reply(404, to_string(e.kind()), e.what());
            case ErrorKind::Config:
                return error_reply(400, to_string(e.kind()), e.what());
            default:
                return error_reply(422, to_string(e.kind()), e.what());
            }
        }

        json parse_body(std::string_view body)
        {
            try
            {
                return json::parse(body);
            }
            catch (const json::parse_error &e)
            {
                fail(ErrorKind::Config, std::string("request body is not valid JSON: ") + e.what());
            }
        }

        std::vector<std::string_view> split_path(std::string_view path)
        {
            std::vector<std::string_view> parts;
            while (!path.empty())
            {
                const auto slash = path.find('/');
                const auto part = path.substr(0, slash);
                if (!part.empty())
                    parts.push_back(part);
                if (slash == std::string_view::npos)
                    break;
                path.remove_prefix(slash + 1);
            }
            return parts;
        }

        double query_number(const std::map<std::string, std::string> &query, const char *key, double fallback)
        {
            const auto it = query.find(key);
            if (it == query.end() || it->second.empty())
                return fallback;
            double v = 0.0;
            const auto &s = it->second;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size())
                fail(ErrorKind::Config, std::string("query parameter '") + key + "' is not a number");
            return v;
        }

        json session_view(const std::string &id, const Session &s)
        {
            json steps = json::array();
            for (const auto &step : s.summaries())
                steps.push_back(detail::step_to_json(step));
            return json{{"id", id},
                        {"method", to_string(s.method())},
                        {"theta0_deg", s.theta0().deg()},
                        {"n_elements", s.model().size()},
                        {"gain_db", 10.0 * std::log10(s.gain_linear())},
                        {"steps", std::move(steps)}};
        }

        json pattern_view(const Session &s, const GridSpec &grid)
        {
            return detail::pattern_to_json(s.pattern(grid), s.theta0().deg(), s.method(), s.step_count());
        }

        Session make_session(const json &doc)
        {
            if (!doc.is_object())
                fail(ErrorKind::Config, "session request must be a JSON object");
            if (!doc.contains("array"))
                fail(ErrorKind::Config, "session request: missing field 'array'");
            if (!doc.contains("method") || !doc.at("method").is_string())
                fail(ErrorKind::Config, "session request: 'method' must be a string");
            const double theta0 = detail::require_number(doc, "theta0_deg", "session request");
            Method method;
            try
            {
                method = method_from_string(doc.at("method").get<std::string>());
            }
            catch (const Error &e)
            {
                fail(ErrorKind::Config, e.what());
            }
            return Session(detail::resolve_array(doc.at("array")), Angle::from_deg(theta0), method);
        }
    }

    SessionService::SessionService(std::optional<std::filesystem::path> persist_dir)
        : persist_dir_(std::move(persist_dir))
    {
        if (persist_dir_)
        {
            std::filesystem::create_directories(*persist_dir_);
            replay();
        }
    }

    std::size_t SessionService::session_count() const
    {
        std::shared_lock lock(map_mutex_);
        return sessions_.size();
    }

    std::shared_ptr<SessionService::Entry> SessionService::find(const std::string &id) const
    {
        std::shared_lock lock(map_mutex_);
        const auto it = sessions_.find(id);
        if (it == sessions_.end())
            fail(ErrorKind::NotFound, "unknown session '" + id + "'");
        return it->second;
    }

    void SessionService::persist(const Entry &entry, const Session &session) const
    {
        if (!persist_dir_)
            return;
        json steps = json::array();
        for (const auto &r : session.requests())
            steps.push_back({{"theta_deg", r.theta_deg}, {"rho_db", r.rho_db}});
        const json doc{{"id", entry.id},
                       {"array", json::parse(entry.array_spec)},
                       {"theta0_deg", session.theta0().deg()},
                       {"method", to_string(session.method())},
                       {"steps", std::move(steps)}};
        // Write then rename so a crash never leaves a truncated record.
        const auto final_path = *persist_dir_ / (entry.id + ".json");
        const auto tmp_path = *persist_dir_ / (entry.id + ".json.tmp");
        {
            std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
            out << doc.dump(2) << "\n";
        }
        std::filesystem::rename(tmp_path, final_path);
    }

    void SessionService::replay()
    {
        std::vector<std::filesystem::path> files;
        for (const auto &f : std::filesystem::directory_iterator(*persist_dir_))
            if (f.is_regular_file() && f.path().extension() == ".json")
                files.push_back(f.path());
        std::sort(files.begin(), files.end());

        for (const auto &path : files)
        {
            std::ifstream in(path);
            std::stringstream ss;
            ss << in.rdbuf();
            const json doc = parse_body(ss.str());
            Session s = make_session(doc);
            for (const auto &step : doc.at("steps"))
                s.step(detail::step_request_from_json(step));

            auto entry = std::make_shared<Entry>();
            entry->id = doc.at("id").get<std::string>();
            entry->array_spec = doc.at("array").dump();
            entry->snapshot = std::make_shared<const Session>(std::move(s));
            if (entry->id.size() > 1 && entry->id[0] == 's')
            {
                std::size_t n = 0;
                const auto [p, ec] = std::from_chars(entry->id.data() + 1, entry->id.data() + entry->id.size(), n);
                if (ec == std::errc())
                    next_id_ = std::max(next_id_, n + 1);
            }
            sessions_[entry->id] = std::move(entry);
        }
    }

    HttpReply SessionService::handle(std::string_view method, std::string_view path,
                                     const std::map<std::string, std::string> &query, std::string_view body)
    {
        try
        {
            const auto parts = split_path(path);
            if (parts.empty() || parts[0] != "sessions" || parts.size() > 3)
                return error_reply(404, "NotFound", "no route for " + std::string(path));

            if (parts.size() == 1)
            {
                if (method == "POST")
                    return create(body);
                return error_reply(405, "MethodNotAllowed", "use POST /sessions");
            }

            const std::string id(parts[1]);
            if (parts.size() == 2)
            {
                if (method == "GET")
                    return show(id);
                if (method == "DELETE")
                    return remove(id);
                return error_reply(405, "MethodNotAllowed", "use GET or DELETE on a session");
            }

            const std::string_view action = parts[2];
            if (action == "steps" && method == "POST")
                return add_step(id, body);
            if (action == "undo" && method == "POST")
                return undo(id);
            if (action == "pattern" && method == "GET")
                return pattern(id, query);
            if (action == "steps" || action == "undo" || action == "pattern")
                return error_reply(405, "MethodNotAllowed", "method not allowed on " + std::string(path));
            return error_reply(404, "NotFound", "no route for " + std::string(path));
        }
        catch (const Error &e)
        {
            return from_error(e);
        }
        catch (const json::exception &e)
        {
            return error_reply(400, "Config", e.what());
        }
        catch (const std::exception &e)
        {
            return error_reply(500, "Internal", e.what());
        }
    }

    HttpReply SessionService::create(std::string_view body)
    {
        const json doc = parse_body(body);
        Session s = make_session(doc);

        auto entry = std::make_shared<Entry>();
        entry->array_spec = doc.at("array").dump();
        entry->snapshot = std::make_shared<const Session>(std::move(s));
        {
            std::unique_lock lock(map_mutex_);
            entry->id = "s" + std::to_string(next_id_++);
            sessions_[entry->id] = entry;
        }
        persist(*entry, *entry->snapshot);
        json out = session_view(entry->id, *entry->snapshot);
        out["pattern"] = pattern_view(*entry->snapshot, {});
        return reply(201, out);
    }

    HttpReply SessionService::add_step(const std::string &id, std::string_view body)
    {
        const auto entry = find(id);
        const StepRequest req = detail::step_request_from_json(parse_body(body));

        std::lock_guard writer(entry->writer);
        Session next = *std::atomic_load(&entry->snapshot);
        const StepSummary &summary = next.step(req);
        json out{{"id", id}, {"step", detail::step_to_json(summary)}};
        auto snap = std::make_shared<const Session>(std::move(next));
        persist(*entry, *snap);
        out["session"] = session_view(id, *snap);
        out["pattern"] = pattern_view(*snap, {});
        std::atomic_store(&entry->snapshot, std::shared_ptr<const Session>(snap));
        return reply(200, out);
    }

    HttpReply SessionService::undo(const std::string &id)
    {
        const auto entry = find(id);
        std::lock_guard writer(entry->writer);
        Session next = *std::atomic_load(&entry->snapshot);
        if (!next.undo())
            fail(ErrorKind::InvalidArgument, "session has no steps to undo");
        auto snap = std::make_shared<const Session>(std::move(next));
        persist(*entry, *snap);
        json out = session_view(id, *snap);
        out["pattern"] = pattern_view(*snap, {});
        std::atomic_store(&entry->snapshot, std::shared_ptr<const Session>(snap));
        return reply(200, out);
    }

    HttpReply SessionService::show(const std::string &id) const
    {
        const auto entry = find(id);
        return reply(200, session_view(id, *std::atomic_load(&entry->snapshot)));
    }

    HttpReply SessionService::pattern(const std::string &id, const std::map<std::string, std::string> &query) const
    {
        const auto entry = find(id);
        GridSpec grid;
        grid.from_deg = query_number(query, "from_deg", grid.from_deg);
        grid.to_deg = query_number(query, "to_deg", grid.to_deg);
        grid.step_deg = query_number(query, "step_deg", grid.step_deg);
        try
        {
            grid.validate();
        }
        catch (const Error &e)
        {
            fail(ErrorKind::Config, e.what());
        }
        if (grid.points() > 100001)
            fail(ErrorKind::Config, "pattern grid is too fine (more than 100001 points)");
        return reply(200, pattern_view(*std::atomic_load(&entry->snapshot), grid));
    }

    HttpReply SessionService::remove(const std::string &id)
    {
        {
            std::unique_lock lock(map_mutex_);
            if (sessions_.erase(id) == 0)
                fail(ErrorKind::NotFound, "unknown session '" + id + "'");
        }
        if (persist_dir_)
            std::filesystem::remove(*persist_dir_ / (id + ".json"));
        return reply(200, json{{"deleted", id}});
    }
}
