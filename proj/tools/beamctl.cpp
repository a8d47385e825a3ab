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

// beamctl: run experiment configs, sweep a control level, or host the session API.

#include "beamctl/error.hpp"
#include "beamctl/experiment.hpp"
#include "beamctl/service.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace
{
    int run_cmd(const std::string &config_path, const std::string &out_dir, const std::string &format)
    {
        const auto config = beamctl::load_experiment_config(config_path);
        const auto record = beamctl::run_experiment(config);
        const auto written = beamctl::write_exports(record, out_dir, beamctl::export_format_from_string(format));
        std::cout << beamctl::summary_csv(record);
        std::cerr << "wrote " << written.size() << " files to " << out_dir << "\n";
        return 0;
    }

    int sweep_cmd(const std::string &config_path, const std::string &out_dir, unsigned threads)
    {
        const auto config = beamctl::load_experiment_config(config_path);
        const auto rows = beamctl::run_sweep(config, threads);
        const auto path = beamctl::write_sweep_csv(rows, out_dir);
        std::cerr << rows.size() << " rows -> " << path.string() << "\n";
        return 0;
    }

    int validate_cmd(const std::string &config_path)
    {
        const auto config = beamctl::load_experiment_config(config_path);
        std::cout << "ok: " << config.array.size() << " elements, " << config.methods.size() << " methods, "
                  << config.steps.size() << " steps" << (config.sweep ? ", sweep" : "") << "\n";
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Sequential array response control for linear arrays"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", format = "csv";
    unsigned threads = 1;
    std::string host = "127.0.0.1", persist_dir, static_dir;
    int port = 8080;

    auto *run = app.add_subcommand("run", "Run every method over the configured steps and export");
    run->add_option("--config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto *sweep = app.add_subcommand("sweep", "Sweep the level of one step and tabulate D and J");
    sweep->add_option("--config", config_path, "experiment config with a sweep section")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--threads", threads, "worker threads, 0 = all cores");

    auto *serve = app.add_subcommand("serve", "Serve the HTTP session API");
    serve->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
    serve->add_option("--host", host, "bind address");
    serve->add_option("--persist", persist_dir, "directory for session write-through");
    serve->add_option("--static", static_dir, "directory served at /")->check(CLI::ExistingDirectory);

    auto *validate = app.add_subcommand("validate", "Check a config without running it");
    validate->add_option("--config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
            return run_cmd(config_path, out_dir, format);
        if (*sweep)
            return sweep_cmd(config_path, out_dir, threads);
        if (*validate)
            return validate_cmd(config_path);

        beamctl::SessionService service(persist_dir.empty() ? std::nullopt
                                                            : std::optional<std::filesystem::path>(persist_dir));
        std::cerr << "listening on http://" << host << ":" << port << " (" << service.session_count()
                  << " sessions restored)\n";
        beamctl::serve(service, host, port,
                       static_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(static_dir));
        return 0;
    }
    catch (const beamctl::Error &e)
    {
        std::cerr << "error [" << beamctl::to_string(e.kind()) << "]: " << e.what() << "\n";
        return e.kind() == beamctl::ErrorKind::Config || e.kind() == beamctl::ErrorKind::NotFound ? 2 : 3;
    }
}
