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

#include "test_support.hpp"

#include "beamctl/error.hpp"
#include "beamctl/experiment.hpp"

#include <fstream>
#include <sstream>

using namespace testing;
using Catch::Approx;

namespace
{
    const std::filesystem::path source_dir = BEAMCTL_SOURCE_DIR;

    ExperimentConfig experiment1() { return load_experiment_config(source_dir / "configs/experiment1.json"); }
    ExperimentConfig experiment2() { return load_experiment_config(source_dir / "configs/experiment2.json"); }

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    ErrorKind kind_of(const std::string &json)
    {
        try
        {
            parse_experiment_config(json);
        }
        catch (const Error &e)
        {
            return e.kind();
        }
        FAIL("config was accepted: " << json);
        return ErrorKind::NotFound;
    }

    std::filesystem::path scratch(const std::string &name)
    {
        const auto dir = std::filesystem::temp_directory_path() / ("beamctl_test_" + name);
        std::filesystem::remove_all(dir);
        return dir;
    }
}

TEST_CASE("bundled configs parse")
{
    const ExperimentConfig c = experiment1();
    CHECK(c.array.size() == 11);
    CHECK(c.array_label == "nla11");
    CHECK(c.theta0_deg == 20.0);
    CHECK(c.methods.size() == 3);
    REQUIRE(c.steps.size() == 2);
    CHECK(c.steps[1] == StepRequest{-5.0, -30.0});
    REQUIRE(c.sweep);
    CHECK(c.sweep->levels_db().size() == 61);
    CHECK(experiment2().sweep->levels_db().size() == 41);
}

TEST_CASE("config validation")
{
    const std::string head = R"({"array": "nla11", "theta0_deg": 20, )";
    CHECK(kind_of(head + R"("methods": [], "steps": [{"theta_deg": -45, "rho_db": -40}]})") == ErrorKind::Config);
    CHECK(kind_of(head + R"("methods": ["oparc"], "steps": []})") == ErrorKind::Config);
    CHECK(kind_of(head + R"("methods": ["oparc"], "steps": [{"theta_deg": -45, "rho_db": 2}]})") == ErrorKind::Config);
    CHECK(kind_of(head + R"("methods": ["lcmv"], "steps": [{"theta_deg": -45, "rho_db": -40}]})") == ErrorKind::Config);
    CHECK(kind_of(head + R"("methods": ["oparc", "oparc"], "steps": [{"theta_deg": -45, "rho_db": -40}]})") ==
          ErrorKind::Config);
    CHECK(kind_of(head + R"("methods": ["oparc"], "steps": [{"theta_deg": -45}]})") == ErrorKind::Config);
    CHECK(kind_of(head + R"("methods": ["oparc"], "steps": [{"theta_deg": -45, "rho_db": -40}],
                           "sweep": {"step_index": 1, "rho_db_from": -50, "rho_db_to": -20}})") == ErrorKind::Config);
    CHECK(kind_of(head + R"("methods": ["oparc"], "steps": [{"theta_deg": -45, "rho_db": -40}],
                           "sweep": {"step_index": 0, "rho_db_from": -10, "rho_db_to": 5}})") == ErrorKind::Config);
    CHECK(kind_of(head + R"("methods": ["oparc"], "steps": [{"theta_deg": -45, "rho_db": -40}],
                           "grid": {"from_deg": -100}})") == ErrorKind::Config);
    CHECK(kind_of(R"({"array": "nosuch", "theta0_deg": 20, "methods": ["oparc"],
                      "steps": [{"theta_deg": -45, "rho_db": -40}]})") != ErrorKind::InvalidArgument);
    CHECK(kind_of("{") == ErrorKind::Config);
    CHECK(kind_of("[]") == ErrorKind::Config);
}

TEST_CASE("inline array config")
{
    const ExperimentConfig c = parse_experiment_config(R"({
        "array": {"omega_rad_s": 1884955592.1538758, "elements": [{"x_m": 0}, {"x_m": 0.5}, {"x_m": 1.0}, {"x_m": 1.5}]},
        "theta0_deg": 0, "methods": ["oparc"], "steps": [{"theta_deg": 40, "rho_db": -30}]})");
    CHECK(c.array.size() == 4);
    CHECK(c.array_label == "inline");
    const SessionRecord rec = run_experiment(c);
    CHECK(rec.run(Method::Oparc).steps[0].achieved_level_db == Approx(-30.0).margin(1e-9));
}

TEST_CASE("run_experiment - experiment 1 table")
{
    const SessionRecord rec = run_experiment(experiment1());
    const auto &a = rec.run(Method::A2rc).steps;
    const auto &p = rec.run(Method::Parc).steps;
    const auto &o = rec.run(Method::Oparc).steps;
    CHECK(a[1].metrics.d_db == Approx(5.05).margin(0.05));
    CHECK(p[1].metrics.d_db == Approx(0.86).margin(0.05));
    CHECK(o[1].metrics.d_db == Approx(0.51).margin(0.05));
    CHECK(a[1].metrics.j_rms == Approx(4.72e-3).epsilon(0.02));
    CHECK(p[1].metrics.j_rms == Approx(7.84e-3).epsilon(0.02));
    CHECK(o[1].metrics.j_rms == Approx(4.69e-3).epsilon(0.02));
    CHECK(o[0].metrics.gain_db == Approx(10.0482).margin(0.05));
    CHECK(o[1].metrics.gain_db == Approx(10.0074).margin(0.05));

    for (const auto &run : rec.runs)
    {
        CHECK(run.patterns.size() == 3);
        CHECK(run.steps[0].d_per_point_db.empty());
        CHECK(run.steps[1].d_per_point_db.size() == 1);
    }
    CHECK_THROWS_AS(run_experiment(parse_experiment_config(R"({"array": "nla11", "theta0_deg": 20,
        "methods": ["oparc"], "steps": [{"theta_deg": -45, "rho_db": -40}]})"))
                        .run(Method::Parc),
                    Error);
}

TEST_CASE("run_experiment - D takes the worst earlier point for longer sessions")
{
    const SessionRecord rec = run_experiment(parse_experiment_config(R"({"array": "nla11", "theta0_deg": 20,
        "methods": ["a2rc"], "steps": [{"theta_deg": -45, "rho_db": -40}, {"theta_deg": -5, "rho_db": -30},
                                        {"theta_deg": 60, "rho_db": -35}]})"));
    const StepSummary &s = rec.runs[0].steps[2];
    REQUIRE(s.d_per_point_db.size() == 2);
    CHECK(s.metrics.d_db == std::max(s.d_per_point_db[0], s.d_per_point_db[1]));
}

TEST_CASE("run_experiment - engine errors carry step context")
{
    const ExperimentConfig c = parse_experiment_config(R"({"array": "nla11", "theta0_deg": 20,
        "methods": ["parc"], "steps": [{"theta_deg": -45, "rho_db": -40}, {"theta_deg": 20, "rho_db": -10}]})");
    try
    {
        run_experiment(c);
        FAIL("expected an engine error");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::InvalidArgument);
        CHECK(std::string(e.what()).find("parc step 2") != std::string::npos);
    }
}

TEST_CASE("run_sweep - the -30 dB row matches the single run")
{
    const ExperimentConfig c = experiment1();
    const auto rows = run_sweep(c);
    const SessionRecord rec = run_experiment(c);
    REQUIRE(rows.size() == 61 * 3);
    std::size_t matched = 0;
    for (const auto &r : rows)
        if (r.rho_db == -30.0)
        {
            const StepSummary &s = rec.run(r.method).steps[1];
            CHECK(r.d_db == s.metrics.d_db);
            CHECK(r.j_rms == s.metrics.j_rms);
            CHECK(r.gain_db == s.metrics.gain_db);
            ++matched;
        }
    CHECK(matched == 3);
}

TEST_CASE("run_sweep - single point equals run_experiment")
{
    ExperimentConfig c = experiment2();
    c.sweep->rho_db_from = c.sweep->rho_db_to = -7.5;
    const auto rows = run_sweep(c);
    REQUIRE(rows.size() == 3);
    c.steps[1].rho_db = -7.5;
    const SessionRecord rec = run_experiment(c);
    for (const auto &r : rows)
    {
        CHECK(r.d_db == rec.run(r.method).steps[1].metrics.d_db);
        CHECK(r.j_rms == rec.run(r.method).steps[1].metrics.j_rms);
    }
}

TEST_CASE("run_sweep - threaded and serial runs agree exactly")
{
    const ExperimentConfig c = experiment2();
    CHECK(sweep_csv(run_sweep(c, 1)) == sweep_csv(run_sweep(c, 4)));
}

TEST_CASE("run_sweep - OPARC curves stay below the others")
{
    for (const auto &c : {experiment1(), experiment2()})
    {
        const auto rows = run_sweep(c, 0);
        for (std::size_t i = 0; i < rows.size(); i += 3)
        {
            const SweepRow &o = rows[i + 2];
            REQUIRE(o.method == Method::Oparc);
            CHECK(o.d_db <= rows[i].d_db);
            CHECK(o.d_db <= rows[i + 1].d_db);
            CHECK(o.j_rms <= rows[i].j_rms);
            CHECK(o.j_rms <= rows[i + 1].j_rms);
        }
    }
}

TEST_CASE("run_sweep - requires a sweep section")
{
    ExperimentConfig c = experiment1();
    c.sweep.reset();
    CHECK_THROWS_AS(run_sweep(c), Error);
}

TEST_CASE("exports are byte-identical across runs")
{
    for (const auto fmt : {ExportFormat::Csv, ExportFormat::Json})
    {
        const auto d1 = scratch("det1"), d2 = scratch("det2");
        const auto f1 = write_exports(run_experiment(experiment1()), d1, fmt);
        const auto f2 = write_exports(run_experiment(experiment1()), d2, fmt);
        REQUIRE(f1.size() == 10);
        REQUIRE(f1.size() == f2.size());
        for (std::size_t i = 0; i < f1.size(); ++i)
        {
            CHECK(f1[i].filename() == f2[i].filename());
            CHECK(slurp(f1[i]) == slurp(f2[i]));
        }
        std::filesystem::remove_all(d1);
        std::filesystem::remove_all(d2);
    }
}

TEST_CASE("pattern exports")
{
    const SessionRecord rec = run_experiment(experiment1());
    const PatternGrid &p = rec.run(Method::Oparc).patterns[1];
    const std::string csv = pattern_csv(p);
    CHECK(csv.rfind("angle_deg,level_db\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 902);
    const std::string js = pattern_json(p, 20.0, Method::Oparc, 1);
    CHECK(js.find("\"meta\":{\"method\":\"oparc\",\"step\":1,\"theta0_deg\":20.0}") != std::string::npos);
    CHECK(export_format_from_string("json") == ExportFormat::Json);
    CHECK_THROWS_AS(export_format_from_string("xml"), Error);
}

TEST_CASE("summary exports")
{
    const SessionRecord rec = run_experiment(experiment2());
    const std::string csv = summary_csv(rec);
    CHECK(csv.rfind("method,step,theta_deg,rho_db,achieved_level_db,gain_db,d_db,j_rms\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
    const std::string js = summary_json(rec);
    CHECK(js.find("\"implicit_inrs\"") != std::string::npos);
    CHECK(js.find("\"circles\"") != std::string::npos);
}
