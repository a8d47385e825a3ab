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

#ifndef BEAMCTL_EXPERIMENT_HPP
#define BEAMCTL_EXPERIMENT_HPP

#include "beamctl/array_model.hpp"
#include "beamctl/control_core.hpp"
#include "beamctl/metrics.hpp"
#include "beamctl/session.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace beamctl
{
    struct SweepSpec
    {
        std::size_t step_index = 0; // 0-based index into steps
        double rho_db_from = 0.0;
        double rho_db_to = 0.0;
        double rho_db_step = 0.5;

        std::vector<double> levels_db() const;
    };

    struct ExperimentConfig
    {
        ArrayModel array;
        std::string array_label; // bundled name, or "inline"
        double theta0_deg = 0.0;
        std::vector<Method> methods;
        std::vector<StepRequest> steps;
        GridSpec grid;
        std::optional<SweepSpec> sweep;

        void validate() const;
    };

    // Parses and validates. `array` may be a bundled name or an inline object.
    ExperimentConfig parse_experiment_config(std::string_view json_text);
    ExperimentConfig load_experiment_config(const std::filesystem::path &path);

    struct MethodRun
    {
        Method method = Method::Oparc;
        std::vector<StepSummary> steps;
        std::vector<PatternGrid> patterns; // [0] quiescent, [k] after step k
    };

    struct SessionRecord
    {
        double theta0_deg = 0.0;
        std::string array_label;
        std::vector<MethodRun> runs;

        const MethodRun &run(Method method) const;
    };

    // Engine errors are rethrown with the method and step prepended.
    SessionRecord run_experiment(const ExperimentConfig &config);

    struct SweepRow
    {
        double rho_db = 0.0;
        Method method = Method::Oparc;
        double d_db = 0.0;
        double j_rms = 0.0;
        double gain_db = 0.0;
    };

    // One fresh session per level; rows ordered by level then by config method order.
    // threads == 0 picks the hardware concurrency.
    std::vector<SweepRow> run_sweep(const ExperimentConfig &config, unsigned threads = 1);

    enum class ExportFormat
    {
        Csv,
        Json
    };

    ExportFormat export_format_from_string(std::string_view name);

    // summary.{csv,json} plus one pattern file per method and step. Returns written paths.
    std::vector<std::filesystem::path> write_exports(const SessionRecord &record, const std::filesystem::path &dir,
                                                     ExportFormat format);
    std::filesystem::path write_sweep_csv(const std::vector<SweepRow> &rows, const std::filesystem::path &dir);

    // Text forms used by the exports and the Python module.
    std::string summary_csv(const SessionRecord &record);
    std::string summary_json(const SessionRecord &record);
    std::string pattern_csv(const PatternGrid &pattern);
    std::string pattern_json(const PatternGrid &pattern, double theta0_deg, Method method, std::size_t step);
    std::string sweep_csv(const std::vector<SweepRow> &rows);
}

#endif
