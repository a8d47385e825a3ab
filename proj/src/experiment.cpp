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

#include "beamctl/experiment.hpp"
#include "beamctl/error.hpp"
#include "wire.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace beamctl
{
    using detail::json;

    namespace
    {
        // %.10g keeps exports short and stable across runs.
        std::string fmt(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.10g", v);
            return buf;
        }

        std::string read_file(const std::filesystem::path &path)
        {
            std::ifstream in(path, std::ios::binary);
            if (!in)
                fail(ErrorKind::NotFound, "cannot open " + path.string());
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }

        void write_file(const std::filesystem::path &path, const std::string &text)
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                fail(ErrorKind::Config, "cannot write " + path.string());
            out << text;
        }

        GridSpec grid_from_json(const json &doc)
        {
            if (!doc.is_object())
                fail(ErrorKind::Config, "grid must be an object");
            GridSpec g;
            g.from_deg = detail::number_or(doc, "from_deg", g.from_deg, "grid");
            g.to_deg = detail::number_or(doc, "to_deg", g.to_deg, "grid");
            g.step_deg = detail::number_or(doc, "step_deg", g.step_deg, "grid");
            return g;
        }

        SweepSpec sweep_from_json(const json &doc)
        {
            if (!doc.is_object())
                fail(ErrorKind::Config, "sweep must be an object");
            if (!doc.contains("step_index") || !doc.at("step_index").is_number_unsigned())
                fail(ErrorKind::Config, "sweep: step_index must be a non-negative integer");
            SweepSpec s;
            s.step_index = doc.at("step_index").get<std::size_t>();
            s.rho_db_from = detail::require_number(doc, "rho_db_from", "sweep");
            s.rho_db_to = detail::require_number(doc, "rho_db_to", "sweep");
            s.rho_db_step = detail::number_or(doc, "rho_db_step", s.rho_db_step, "sweep");
            return s;
        }

        std::string step_context(Method m, std::size_t k, const std::exception &e)
        {
            return std::string(to_string(m)) + " step " + std::to_string(k) + ": " + e.what();
        }

        MethodRun run_method(const ExperimentConfig &config, Method method, const std::vector<StepRequest> &steps,
                             bool keep_patterns)
        {
            MethodRun run;
            run.method = method;
            Session session(config.array, Angle::from_deg(config.theta0_deg), method, config.grid);
            if (keep_patterns)
                run.patterns.push_back(session.pattern(config.grid));
            for (const auto &req : steps)
            {
                try
                {
                    session.step(req);
                }
                catch (const Error &e)
                {
                    fail(e.kind(), step_context(method, session.step_count() + 1, e));
                }
                if (keep_patterns)
                    run.patterns.push_back(session.pattern(config.grid));
            }
            run.steps = session.summaries();
            return run;
        }
    }

    std::vector<double> SweepSpec::levels_db() const
    {
        if (!(rho_db_step > 0.0))
            fail(ErrorKind::Config, "sweep: rho_db_step must be > 0");
        if (rho_db_to < rho_db_from)
            fail(ErrorKind::Config, "sweep: rho_db_to is below rho_db_from");
        const auto n = static_cast<std::size_t>(std::llround((rho_db_to - rho_db_from) / rho_db_step)) + 1;
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = rho_db_from + static_cast<double>(i) * rho_db_step;
        return out;
    }

    void ExperimentConfig::validate() const
    {
        if (methods.empty())
            fail(ErrorKind::Config, "methods must list at least one of oparc, parc, a2rc");
        for (std::size_t i = 0; i < methods.size(); ++i)
            for (std::size_t j = i + 1; j < methods.size(); ++j)
                if (methods[i] == methods[j])
                    fail(ErrorKind::Config, "methods: '" + std::string(to_string(methods[i])) + "' listed twice");
        if (steps.empty())
            fail(ErrorKind::Config, "steps must not be empty");
        if (!Angle::from_deg(theta0_deg).in_domain())
            fail(ErrorKind::Config, "theta0_deg must lie in [-90, 90]");
        for (std::size_t k = 0; k < steps.size(); ++k)
        {
            const auto &s = steps[k];
            const std::string where = "steps[" + std::to_string(k) + "]";
            if (!Angle::from_deg(s.theta_deg).in_domain())
                fail(ErrorKind::Config, where + ": theta_deg must lie in [-90, 90]");
            if (s.rho_db > 0.0)
                fail(ErrorKind::Config, where + ": rho_db must be <= 0");
        }
        try
        {
            grid.validate();
        }
        catch (const Error &e)
        {
            fail(ErrorKind::Config, std::string("grid: ") + e.what());
        }
        if (sweep)
        {
            if (sweep->step_index >= steps.size())
                fail(ErrorKind::Config, "sweep: step_index " + std::to_string(sweep->step_index) + " is outside steps");
            const auto levels = sweep->levels_db();
            if (levels.back() > 1e-12)
                fail(ErrorKind::Config, "sweep: levels must stay <= 0 dB");
        }
    }

    ExperimentConfig parse_experiment_config(std::string_view json_text)
    {
        json doc;
        try
        {
            doc = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            fail(ErrorKind::Config, std::string("experiment config is not valid JSON: ") + e.what());
        }
        if (!doc.is_object())
            fail(ErrorKind::Config, "experiment config must be a JSON object");
        if (!doc.contains("array"))
            fail(ErrorKind::Config, "experiment config: missing field 'array'");

        const json &arr = doc.at("array");
        ExperimentConfig c{detail::resolve_array(arr), arr.is_string() ? arr.get<std::string>() : "inline", 0.0, {}, {},
                           {}, std::nullopt};
        c.theta0_deg = detail::require_number(doc, "theta0_deg", "experiment config");

        if (!doc.contains("methods") || !doc.at("methods").is_array())
            fail(ErrorKind::Config, "experiment config: 'methods' must be an array");
        for (const auto &m : doc.at("methods"))
        {
            if (!m.is_string())
                fail(ErrorKind::Config, "methods entries must be strings");
            try
            {
                c.methods.push_back(method_from_string(m.get<std::string>()));
            }
            catch (const Error &e)
            {
                fail(ErrorKind::Config, e.what());
            }
        }

        if (!doc.contains("steps") || !doc.at("steps").is_array())
            fail(ErrorKind::Config, "experiment config: 'steps' must be an array");
        for (const auto &s : doc.at("steps"))
            c.steps.push_back(detail::step_request_from_json(s));

        if (doc.contains("grid"))
            c.grid = grid_from_json(doc.at("grid"));
        if (doc.contains("sweep") && !doc.at("sweep").is_null())
            c.sweep = sweep_from_json(doc.at("sweep"));

        c.validate();
        return c;
    }

    ExperimentConfig load_experiment_config(const std::filesystem::path &path)
    {
        return parse_experiment_config(read_file(path));
    }

    const MethodRun &SessionRecord::run(Method method) const
    {
        for (const auto &r : runs)
            if (r.method == method)
                return r;
        fail(ErrorKind::NotFound, "method '" + std::string(to_string(method)) + "' was not run");
    }

    SessionRecord run_experiment(const ExperimentConfig &config)
    {
        config.validate();
        SessionRecord rec;
        rec.theta0_deg = config.theta0_deg;
        rec.array_label = config.array_label;
        for (Method m : config.methods)
            rec.runs.push_back(run_method(config, m, config.steps, true));
        return rec;
    }

    std::vector<SweepRow> run_sweep(const ExperimentConfig &config, unsigned threads)
    {
        config.validate();
        if (!config.sweep)
            fail(ErrorKind::Config, "config has no sweep section");
        const SweepSpec &sw = *config.sweep;
        const auto levels = sw.levels_db();
        const std::size_t per_level = config.methods.size();
        std::vector<SweepRow> rows(levels.size() * per_level);

        // Steps after the swept one do not influence its metrics.
        auto work = [&](std::size_t li)
        {
            std::vector<StepRequest> steps(config.steps.begin(), config.steps.begin() + sw.step_index + 1);
            steps[sw.step_index].rho_db = levels[li];
            for (std::size_t mi = 0; mi < per_level; ++mi)
            {
                const MethodRun run = run_method(config, config.methods[mi], steps, false);
                const StepSummary &s = run.steps.back();
                rows[li * per_level + mi] = {levels[li], config.methods[mi], s.metrics.d_db, s.metrics.j_rms,
                                             s.metrics.gain_db};
            }
        };

        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, levels.size()));
        if (threads <= 1)
        {
            for (std::size_t li = 0; li < levels.size(); ++li)
                work(li);
            return rows;
        }

        // Strided partition; every slot has one writer so no locking is needed.
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t]
                              {
                                  try
                                  {
                                      for (std::size_t li = t; li < levels.size(); li += threads)
                                          work(li);
                                  }
                                  catch (...)
                                  {
                                      errors[t] = std::current_exception();
                                  } });
        for (auto &th : pool)
            th.join();
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
        return rows;
    }

    ExportFormat export_format_from_string(std::string_view name)
    {
        if (name == "csv")
            return ExportFormat::Csv;
        if (name == "json")
            return ExportFormat::Json;
        fail(ErrorKind::Config, "format must be csv or json");
    }

    std::string summary_csv(const SessionRecord &record)
    {
        std::string out = "method,step,theta_deg,rho_db,achieved_level_db,gain_db,d_db,j_rms\n";
        for (const auto &run : record.runs)
            for (const auto &s : run.steps)
                out += std::string(to_string(run.method)) + "," + std::to_string(s.index) + "," +
                       fmt(s.request.theta_deg) + "," + fmt(s.request.rho_db) + "," + fmt(s.achieved_level_db) + "," +
                       fmt(s.metrics.gain_db) + "," + fmt(s.metrics.d_db) + "," + fmt(s.metrics.j_rms) + "\n";
        return out;
    }

    std::string summary_json(const SessionRecord &record)
    {
        json runs = json::array();
        for (const auto &run : record.runs)
        {
            json steps = json::array();
            for (const auto &s : run.steps)
                steps.push_back(detail::step_to_json(s));
            runs.push_back({{"method", to_string(run.method)}, {"steps", std::move(steps)}});
        }
        return json{{"theta0_deg", record.theta0_deg}, {"array", record.array_label}, {"runs", std::move(runs)}}.dump(2) +
               "\n";
    }

    std::string pattern_csv(const PatternGrid &pattern)
    {
        std::string out = "angle_deg,level_db\n";
        for (std::size_t i = 0; i < pattern.angles_deg.size(); ++i)
            out += fmt(pattern.angles_deg[i]) + "," + fmt(clamp_db_for_export(pattern.levels_db[i])) + "\n";
        return out;
    }

    std::string pattern_json(const PatternGrid &pattern, double theta0_deg, Method method, std::size_t step)
    {
        return detail::pattern_to_json(pattern, theta0_deg, method, step).dump() + "\n";
    }

    std::string sweep_csv(const std::vector<SweepRow> &rows)
    {
        std::string out = "rho_db,method,d_db,j_rms,gain_db\n";
        for (const auto &r : rows)
            out += fmt(r.rho_db) + "," + std::string(to_string(r.method)) + "," + fmt(r.d_db) + "," + fmt(r.j_rms) + "," +
                   fmt(r.gain_db) + "\n";
        return out;
    }

    std::vector<std::filesystem::path> write_exports(const SessionRecord &record, const std::filesystem::path &dir,
                                                     ExportFormat format)
    {
        std::filesystem::create_directories(dir);
        const bool csv = format == ExportFormat::Csv;
        std::vector<std::filesystem::path> written;

        const auto summary = dir / (csv ? "summary.csv" : "summary.json");
        write_file(summary, csv ? summary_csv(record) : summary_json(record));
        written.push_back(summary);

        for (const auto &run : record.runs)
            for (std::size_t k = 0; k < run.patterns.size(); ++k)
            {
                const auto name = "pattern_" + std::string(to_string(run.method)) + "_step" + std::to_string(k) +
                                  (csv ? ".csv" : ".json");
                write_file(dir / name, csv ? pattern_csv(run.patterns[k])
                                           : pattern_json(run.patterns[k], record.theta0_deg, run.method, k));
                written.push_back(dir / name);
            }
        return written;
    }

    std::filesystem::path write_sweep_csv(const std::vector<SweepRow> &rows, const std::filesystem::path &dir)
    {
        std::filesystem::create_directories(dir);
        const auto path = dir / "sweep.csv";
        write_file(path, sweep_csv(rows));
        return path;
    }
}
