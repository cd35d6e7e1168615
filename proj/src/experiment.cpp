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

#include "hhl/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <thread>

#include <sys/utsname.h>

#include "hhl/circuit.hpp"
#include "hhl/emulator.hpp"
#include "hhl/error.hpp"

namespace hhl {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

ProblemInstance two_by_two(double diag, double off) {
    ProblemInstance p;
    p.n = 1;
    p.matrix.resize(2, 2);
    p.matrix << diag, off, off, diag;
    p.rhs.resize(2);
    p.rhs << 0.0, 1.0;
    return p;
}

void finish(BackendResult &result, const std::vector<double> &truth) {
    std::vector<SolutionEstimate> estimates;
    std::uint64_t shots = 0;
    double hits = 0.0;
    for (const auto &run : result.runs) {
        shots += run.histogram.shots;
        hits += success_rate(run.histogram) * static_cast<double>(run.histogram.shots);
        result.prepare_seconds += run.prepare_seconds;
        result.sample_seconds += run.sample_seconds;
        try {
            estimates.push_back(estimate_x(run.histogram));
        } catch (const Error &e) {
            if (e.code() != ErrorCode::ZeroSuccessCounts) {
                throw;
            }
        }
    }
    result.success_rate = shots ? hits / static_cast<double>(shots) : 0.0;
    if (!estimates.empty()) {
        result.estimate = aggregate_estimates(estimates);
        result.l1_error = l1_error(result.estimate->x_hat, truth);
    }
}

BackendResult run_emulator(const HermitianSystem &sys, const ExperimentConfig &cfg) {
    BackendResult result;
    result.name = "emulator";
    for (std::uint64_t r = 0; r < cfg.repeats; ++r) {
        RunRecord run;
        run.run = r;
        run.seed = cfg.seed + r;
        auto start = Clock::now();
        const auto spec = analyze_spectrum(sys, cfg.m_override);
        const auto state = prepare_emulated_state(sys, spec, cfg.round_eigs);
        run.prepare_seconds = seconds_since(start);
        start = Clock::now();
        run.histogram = sample(state, cfg.shots, run.seed);
        run.sample_seconds = seconds_since(start);
        result.success_probability = state.success_probability();
        result.runs.push_back(std::move(run));
    }
    return result;
}

BackendResult run_simulator(const HermitianSystem &sys, const ExperimentConfig &cfg) {
    BackendResult result;
    result.name = "simulator";
    double leak = 0.0;
    for (std::uint64_t r = 0; r < cfg.repeats; ++r) {
        RunRecord run;
        run.run = r;
        run.seed = cfg.seed + r;
        auto start = Clock::now();
        const auto spec = analyze_spectrum(sys, cfg.m_override);
        const auto state = run_hhl_circuit(sys, spec);
        run.prepare_seconds = seconds_since(start);
        start = Clock::now();
        run.histogram = measure_all(state, cfg.shots, run.seed);
        run.sample_seconds = seconds_since(start);
        const auto dist = reduced_distribution(state);
        double success = 0.0;
        for (std::size_t i = 1; i < dist.size(); i += 2) {
            success += dist[i];
        }
        result.success_probability = success;
        leak = std::max(leak, clock_leakage(state));
        result.runs.push_back(std::move(run));
    }
    result.clock_leakage = leak;
    return result;
}

}  // namespace

std::string to_string(Backend backend) {
    switch (backend) {
        case Backend::Emulator: return "emulator";
        case Backend::Simulator: return "simulator";
        case Backend::Both: return "both";
    }
    return "both";
}

std::string to_string(ReportFormat format) { return format == ReportFormat::Json ? "json" : "csv"; }

Backend parse_backend(const std::string &text) {
    if (text == "emulator") return Backend::Emulator;
    if (text == "simulator") return Backend::Simulator;
    if (text == "both") return Backend::Both;
    throw Error(ErrorCode::InvalidArgument, "unknown backend '" + text + "'");
}

ReportFormat parse_format(const std::string &text) {
    if (text == "json") return ReportFormat::Json;
    if (text == "csv") return ReportFormat::Csv;
    throw Error(ErrorCode::InvalidArgument, "unknown format '" + text + "'");
}

void validate_config(const ExperimentConfig &cfg) {
    if (cfg.shots < 1) {
        throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");
    }
    if (cfg.repeats < 1) {
        throw Error(ErrorCode::InvalidArgument, "repeats must be >= 1");
    }
    if (cfg.m_override && (*cfg.m_override < 1 || *cfg.m_override > kMaxClockQubits)) {
        throw Error(ErrorCode::InvalidArgument, "clock override must lie in [1, 62]");
    }
}

std::optional<ProblemInstance> builtin_problem(const std::string &name) {
    if (name == "exp1") {
        return two_by_two(1.0, -1.0 / 3.0);
    }
    if (name == "exp2") {
        return two_by_two(6.5, -0.5);
    }
    return std::nullopt;
}

HermitianSystem resolve_problem(const std::string &problem) {
    auto instance = builtin_problem(problem);
    if (!instance) {
        instance = load_problem(problem);
    }
    return validate_system(instance->matrix, instance->rhs);
}

ShotHistogram BackendResult::merged_histogram() const {
    std::vector<ShotHistogram> parts;
    parts.reserve(runs.size());
    for (const auto &r : runs) {
        parts.push_back(r.histogram);
    }
    return merge_histograms(parts);
}

const BackendResult *ExperimentReport::backend(const std::string &name) const {
    for (const auto &b : backends) {
        if (b.name == name) {
            return &b;
        }
    }
    return nullptr;
}

ExperimentReport run_experiment(const ExperimentConfig &cfg) {
    validate_config(cfg);
    const HermitianSystem sys = resolve_problem(cfg.problem);

    ExperimentReport report;
    report.config = cfg;
    const auto spec = analyze_spectrum(sys, cfg.m_override);
    auto &summary = report.problem;
    summary.n = sys.qubits();
    summary.eigenvalues.assign(spec.eigenvalues.data(), spec.eigenvalues.data() + spec.eigenvalues.size());
    summary.kappa = spec.kappa;
    summary.m = spec.m();
    summary.exact = spec.clock.exact;
    summary.scaled_eigenvalues = spec.clock.scaled;
    summary.rotation_constant = spec.rotation_constant;
    summary.t = spec.t();
    summary.truth = solution_distribution(classical_solution(sys));

    if (cfg.backend != Backend::Simulator) {
        report.backends.push_back(run_emulator(sys, cfg));
    }
    if (cfg.backend != Backend::Emulator) {
        report.backends.push_back(run_simulator(sys, cfg));
    }
    for (auto &b : report.backends) {
        finish(b, summary.truth);
    }
    if (report.backends.size() == 2) {
        report.histogram_mae =
            histogram_mae(report.backends[0].merged_histogram(), report.backends[1].merged_histogram());
    }
    report.environment = environment_description();
    return report;
}

std::vector<SweepRow> scaling_sweep(const HermitianSystem &sys, const std::vector<int> &m_values,
                                    const SweepOptions &options) {
    if (options.timing_reps < 1 || options.shots < 1) {
        throw Error(ErrorCode::InvalidArgument, "sweep needs shots >= 1 and timing_reps >= 1");
    }
    const bool run_emulator = options.backend != Backend::Simulator;
    const bool run_simulator = options.backend != Backend::Emulator;
    const std::size_t count = m_values.size();
    std::vector<std::vector<double>> em_prep(count), em_samp(count), sim_prep(count), sim_samp(count);

    // Repetitions are interleaved across clock sizes so that drift in machine
    // speed hits every m alike. Prepare and sample phases run in separate
    // passes; the sample pass prepares its state untimed.
    for (std::uint64_t rep = 0; rep < options.timing_reps; ++rep) {
        for (std::size_t i = 0; i < count; ++i) {
            const int m = m_values[i];
            if (run_emulator) {
                const auto start = Clock::now();
                const auto spec = analyze_spectrum(sys, m);
                const auto state = prepare_emulated_state(sys, spec, options.round_eigs);
                em_prep[i].push_back(seconds_since(start));
            }
            if (run_simulator) {
                const auto start = Clock::now();
                const auto spec = analyze_spectrum(sys, m);
                const auto state = run_hhl_circuit(sys, spec);
                sim_prep[i].push_back(seconds_since(start));
            }
        }
    }
    for (std::uint64_t rep = 0; rep < options.timing_reps; ++rep) {
        for (std::size_t i = 0; i < count; ++i) {
            const int m = m_values[i];
            const auto spec = analyze_spectrum(sys, m);
            if (run_emulator) {
                const auto state = prepare_emulated_state(sys, spec, options.round_eigs);
                const auto start = Clock::now();
                const auto hist = sample(state, options.shots, options.seed + rep);
                em_samp[i].push_back(seconds_since(start));
            }
            if (run_simulator) {
                const auto state = run_hhl_circuit(sys, spec);
                const auto start = Clock::now();
                const auto hist = measure_all(state, options.shots, options.seed + rep);
                sim_samp[i].push_back(seconds_since(start));
            }
        }
    }

    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < count; ++i) {
        const int m = m_values[i];
        const bool exact = analyze_spectrum(sys, m).clock.exact;
        if (run_emulator) {
            rows.push_back({m, "emulator", exact, median(em_prep[i]), median(em_samp[i])});
        }
        if (run_simulator) {
            rows.push_back({m, "simulator", exact, median(sim_prep[i]), median(sim_samp[i])});
        }
    }
    return rows;
}

std::string environment_description() {
    std::ostringstream out;
    utsname info{};
    if (uname(&info) == 0) {
        out << info.sysname << " " << info.release << " " << info.machine;
    } else {
        out << "unknown host";
    }
#if defined(__clang__)
    out << "; clang " << __clang_major__ << "." << __clang_minor__;
#elif defined(__GNUC__)
    out << "; gcc " << __GNUC__ << "." << __GNUC_MINOR__;
#endif
    out << "; " << std::thread::hardware_concurrency() << " hardware threads";
    return out.str();
}

}  // namespace hhl
