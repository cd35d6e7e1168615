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

// hhl-lab: reproduce the two-backend HHL experiments from the command line.
//
//   hhl-lab run   --problem exp1 --backend both --shots 2048 --repeats 10 --seed 7 --out r.json
//   hhl-lab sweep --problem exp1 --m-list 2,3,4 --out sweep.csv --format csv
//
// Without --out the report goes to $HHL_LAB_OUTPUT_DIR/<name>.<ext> when that
// variable is set, otherwise to stdout.
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hhl/circuit.hpp"
#include "hhl/error.hpp"
#include "hhl/experiment.hpp"
#include "hhl/report.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr const char *kOutputDirVar = "HHL_LAB_OUTPUT_DIR";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string problem_stem(const std::string &problem) {
    if (hhl::builtin_problem(problem)) {
        return problem;
    }
    return std::filesystem::path(problem).stem().string();
}

std::optional<std::filesystem::path> output_path(const std::string &explicit_out, const std::string &name,
                                                 hhl::ReportFormat format) {
    if (!explicit_out.empty()) {
        return std::filesystem::path(explicit_out);
    }
    if (const char *dir = std::getenv(kOutputDirVar); dir && *dir) {
        return std::filesystem::path(dir) / (name + (format == hhl::ReportFormat::Json ? ".json" : ".csv"));
    }
    return std::nullopt;
}

/// Resolves and validates the problem up front so input mistakes exit with 2.
hhl::HermitianSystem checked_problem(const std::string &problem) {
    try {
        return hhl::resolve_problem(problem);
    } catch (const hhl::Error &e) {
        throw UsageError(std::string("problem '") + problem + "': " + e.what());
    }
}

void print_summary(const hhl::ExperimentReport &report, std::ostream &out) {
    out << std::setprecision(6);
    out << "problem " << report.config.problem << ": m=" << report.problem.m << " kappa=" << report.problem.kappa
        << " truth=(";
    for (std::size_t i = 0; i < report.problem.truth.size(); ++i) {
        out << (i ? ", " : "") << report.problem.truth[i];
    }
    out << ")\n";
    for (const auto &b : report.backends) {
        out << "  " << std::left << std::setw(10) << b.name << std::right;
        if (b.estimate) {
            out << " x_hat=(";
            for (std::size_t i = 0; i < b.estimate->x_hat.size(); ++i) {
                out << (i ? ", " : "") << b.estimate->x_hat[i];
            }
            out << ") l1=" << *b.l1_error;
        } else {
            out << " no ancilla=1 shots";
        }
        out << " success=" << b.success_rate << " prepare=" << b.prepare_seconds << "s sample=" << b.sample_seconds
            << "s\n";
    }
    if (report.histogram_mae) {
        out << "  histogram_mae=" << *report.histogram_mae << "\n";
    }
}

int run_command(const hhl::ExperimentConfig &cfg, const std::string &format_text, const std::string &trace_path) {
    hhl::ExperimentConfig config = cfg;
    try {
        config.format = hhl::parse_format(format_text);
        hhl::validate_config(config);
    } catch (const hhl::Error &e) {
        throw UsageError(e.what());
    }
    const auto sys = checked_problem(config.problem);

    const auto report = hhl::run_experiment(config);
    const auto name = problem_stem(config.problem) + "-" + hhl::to_string(config.backend);
    if (auto path = output_path(config.output, name, config.format)) {
        hhl::emit_report(report, config.format, *path);
        print_summary(report, std::cout);
        std::cout << "report written to " << path->string() << "\n";
    } else if (config.format == hhl::ReportFormat::Json) {
        std::cout << hhl::report_to_json(report).dump(2) << "\n";
    } else {
        std::cout << hhl::report_runs_csv(report) << "\n" << hhl::report_summary_csv(report);
    }

    if (!trace_path.empty()) {
        hhl::GateTrace trace;
        const auto spec = hhl::analyze_spectrum(sys, config.m_override);
        hhl::run_hhl_circuit(sys, spec, &trace);
        hhl::write_text_file(trace_path, trace.str());
    }
    return 0;
}

int sweep_command(const std::string &problem, const std::vector<int> &m_list, const hhl::SweepOptions &options,
                  const std::string &out, const std::string &format_text) {
    hhl::ReportFormat format;
    try {
        format = hhl::parse_format(format_text);
    } catch (const hhl::Error &e) {
        throw UsageError(e.what());
    }
    for (int m : m_list) {
        if (m < 1 || m > 20) {
            throw UsageError("clock sizes in --m-list must lie in [1, 20]");
        }
    }
    const auto sys = checked_problem(problem);
    const auto rows = hhl::scaling_sweep(sys, m_list, options);

    std::cout << std::setprecision(4) << std::scientific;
    std::cout << "   m  backend     prepare_s   sample_s\n";
    for (const auto &r : rows) {
        std::cout << std::setw(4) << r.m << "  " << std::left << std::setw(10) << r.backend << std::right << "  "
                  << r.prepare_seconds << "  " << r.sample_seconds << (r.exact ? "" : "  (rounded)") << "\n";
    }
    if (auto path = output_path(out, problem_stem(problem) + "-sweep", format)) {
        hhl::emit_sweep(problem, rows, format, *path);
        std::cout << "sweep written to " << path->string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Sample the ideal HHL output distribution with a state-vector simulator and an eigenbasis emulator"};
    app.require_subcommand(1);

    hhl::ExperimentConfig cfg;
    std::string backend_text = "both";
    std::string format_text = "json";
    std::optional<int> m_override;
    std::string trace_path;
    auto *run = app.add_subcommand("run", "Run an experiment and write a report");
    run->add_option("--problem", cfg.problem, "exp1, exp2 or a problem file")->capture_default_str();
    run->add_option("--backend", backend_text, "emulator, simulator or both")
        ->check(CLI::IsMember({"emulator", "simulator", "both"}))
        ->capture_default_str();
    run->add_option("--shots", cfg.shots, "Shots per run")->capture_default_str();
    run->add_option("--repeats", cfg.repeats, "Independent runs; run r uses seed + r")->capture_default_str();
    run->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
    run->add_option("--m", m_override, "Clock qubits (rounded eigenvalues when below the exact width)");
    run->add_flag("--round-eigs", cfg.round_eigs, "Emulator uses rounded clock integers for inexact ratios");
    run->add_option("--out", cfg.output, "Output path");
    run->add_option("--format", format_text, "json or csv")->capture_default_str();
    run->add_option("--trace", trace_path, "Write the simulator's gate trace to this file");

    std::string sweep_problem = "exp1";
    std::vector<int> m_list;
    hhl::SweepOptions sweep_opts;
    std::string sweep_backend = "both";
    std::string sweep_out;
    std::string sweep_format = "json";
    auto *sweep = app.add_subcommand("sweep", "Time both backends across clock sizes");
    sweep->add_option("--problem", sweep_problem, "exp1, exp2 or a problem file")->capture_default_str();
    sweep->add_option("--m-list", m_list, "Comma-separated clock sizes")->delimiter(',')->required();
    sweep->add_option("--shots", sweep_opts.shots, "Shots sampled per timing repetition")->capture_default_str();
    sweep->add_option("--reps", sweep_opts.timing_reps, "Timing repetitions (median is reported)")
        ->capture_default_str();
    sweep->add_option("--seed", sweep_opts.seed, "Base seed")->capture_default_str();
    sweep->add_option("--backend", sweep_backend, "emulator, simulator or both")
        ->check(CLI::IsMember({"emulator", "simulator", "both"}))
        ->capture_default_str();
    sweep->add_flag("--round-eigs", sweep_opts.round_eigs, "Emulator uses rounded clock integers");
    sweep->add_option("--out", sweep_out, "Output path");
    sweep->add_option("--format", sweep_format, "json or csv")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*run) {
            cfg.backend = hhl::parse_backend(backend_text);
            cfg.m_override = m_override;
            return run_command(cfg, format_text, trace_path);
        }
        sweep_opts.backend = hhl::parse_backend(sweep_backend);
        return sweep_command(sweep_problem, m_list, sweep_opts, sweep_out, sweep_format);
    } catch (const UsageError &e) {
        std::cerr << "hhl-lab: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "hhl-lab: " << e.what() << "\n";
        return kExitRuntime;
    }
}
