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

// Experiment driver: runs both backends on a problem for a number of seeded
// repetitions and collects estimates, error metrics and timings.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hhl/analysis.hpp"
#include "hhl/linsys.hpp"
#include "hhl/problem_io.hpp"
#include "hhl/sampling.hpp"

namespace hhl {

enum class Backend { Emulator, Simulator, Both };
enum class ReportFormat { Json, Csv };

std::string to_string(Backend backend);
std::string to_string(ReportFormat format);
Backend parse_backend(const std::string &text);
ReportFormat parse_format(const std::string &text);

struct ExperimentConfig {
    /// "exp1", "exp2" or a path to a problem file.
    std::string problem = "exp1";
    Backend backend = Backend::Both;
    std::uint64_t shots = 2048;
    std::uint64_t repeats = 10;
    std::uint64_t seed = 0;
    std::optional<int> m_override;
    bool round_eigs = false;
    std::string output;
    ReportFormat format = ReportFormat::Json;
};

/// Throws InvalidArgument for shots or repeats below 1 or a clock override
/// outside [1, 62].
void validate_config(const ExperimentConfig &cfg);

/// The two builtin systems: "exp1" is [[1, -1/3], [-1/3, 1]] and "exp2" is
/// [[13/2, -1/2], [-1/2, 13/2]], both with b = (0, 1).
std::optional<ProblemInstance> builtin_problem(const std::string &name);

/// Builtin name or problem file, validated.
HermitianSystem resolve_problem(const std::string &problem);

struct RunRecord {
    std::uint64_t run = 0;
    std::uint64_t seed = 0;
    ShotHistogram histogram;
    double prepare_seconds = 0.0;
    double sample_seconds = 0.0;
};

struct BackendResult {
    std::string name;
    std::vector<RunRecord> runs;
    /// Mean of the per-run estimates; empty when no run saw ancilla = 1.
    std::optional<SolutionEstimate> estimate;
    std::optional<double> l1_error;
    /// Observed fraction of ancilla = 1 shots over all runs.
    double success_rate = 0.0;
    /// P(ancilla = 1) of the prepared state.
    double success_probability = 0.0;
    /// Simulator only: mass left on nonzero clock values.
    std::optional<double> clock_leakage;
    double prepare_seconds = 0.0;
    double sample_seconds = 0.0;

    double total_seconds() const { return prepare_seconds + sample_seconds; }
    ShotHistogram merged_histogram() const;
};

struct ProblemSummary {
    int n = 0;
    std::vector<double> eigenvalues;
    double kappa = 1.0;
    int m = 0;
    bool exact = false;
    std::vector<std::int64_t> scaled_eigenvalues;
    double rotation_constant = 1.0;
    double t = 0.0;
    /// Normalized squared components of the classical solution.
    std::vector<double> truth;
};

struct ExperimentReport {
    ExperimentConfig config;
    ProblemSummary problem;
    std::vector<BackendResult> backends;
    /// Between the merged histograms, when both backends ran.
    std::optional<double> histogram_mae;
    std::string environment;

    const BackendResult *backend(const std::string &name) const;
};

/// Runs `repeats` runs per selected backend; run r uses seed + r.
ExperimentReport run_experiment(const ExperimentConfig &cfg);

struct SweepOptions {
    std::uint64_t shots = 2048;
    /// Timings are the median over this many repetitions.
    std::uint64_t timing_reps = 25;
    std::uint64_t seed = 0;
    bool round_eigs = false;
    Backend backend = Backend::Both;
};

struct SweepRow {
    int m = 0;
    std::string backend;
    bool exact = false;
    double prepare_seconds = 0.0;
    double sample_seconds = 0.0;

    double total_seconds() const { return prepare_seconds + sample_seconds; }
};

/// Times both backends with the clock forced to each m in `m_values`.
std::vector<SweepRow> scaling_sweep(const HermitianSystem &sys, const std::vector<int> &m_values,
                                    const SweepOptions &options);

/// Host, compiler and thread count, for the report's environment field.
std::string environment_description();

}  // namespace hhl
