// Copyright 2026 The hhl-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Report serialization.
//
// JSON (canonical) has four top-level keys:
//   config       echo of the ExperimentConfig
//   backends     one object per backend: per-run counts over every (b, ancilla)
//                label, merged counts, estimate, l1_error, success figures and
//                a "timing" object
//   cross        problem summary (spectrum, clock plan, truth) and, when both
//                backends ran, histogram_mae
//   environment  host description
// Everything except the "timing" objects and "environment" is a deterministic
// function of the config.
//
// CSV writes per-run rows `run,backend,label,count` to the output path and a
// long-format summary `section,key,value` next to it (out.csv -> out.summary.csv).

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hhl/experiment.hpp"

namespace hhl {

nlohmann::ordered_json report_to_json(const ExperimentReport &report);

/// Drops every "timing" object and the "environment" key.
nlohmann::ordered_json strip_nondeterministic(nlohmann::ordered_json doc);

std::string report_runs_csv(const ExperimentReport &report);
std::string report_summary_csv(const ExperimentReport &report);

std::filesystem::path summary_path_for(const std::filesystem::path &csv_path);

/// Writes the report; throws Error(IoError) when a file cannot be written.
void emit_report(const ExperimentReport &report, ReportFormat format, const std::filesystem::path &path);

nlohmann::ordered_json sweep_to_json(const std::string &problem, const std::vector<SweepRow> &rows);
std::string sweep_to_csv(const std::vector<SweepRow> &rows);
void emit_sweep(const std::string &problem, const std::vector<SweepRow> &rows, ReportFormat format,
                const std::filesystem::path &path);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path &path, const std::string &text);

}  // namespace hhl
