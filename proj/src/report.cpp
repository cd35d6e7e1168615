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

#include "hhl/report.hpp"

#include <fstream>
#include <sstream>

#include "hhl/error.hpp"

namespace hhl {

using nlohmann::ordered_json;

namespace {

ordered_json counts_json(const ShotHistogram &h) {
    ordered_json out = ordered_json::object();
    for (const auto &[label, c] : h.counts) {
        out[label] = c;
    }
    return out;
}

ordered_json timing_json(double prepare, double sample) {
    return {{"prepare_s", prepare}, {"sample_s", sample}, {"total_s", prepare + sample}};
}

ordered_json optional_json(const std::optional<double> &v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json backend_json(const BackendResult &b) {
    ordered_json runs = ordered_json::array();
    for (const auto &r : b.runs) {
        runs.push_back({{"run", r.run},
                        {"seed", r.seed},
                        {"shots", r.histogram.shots},
                        {"counts", counts_json(r.histogram)},
                        {"timing", timing_json(r.prepare_seconds, r.sample_seconds)}});
    }
    ordered_json out;
    out["runs"] = std::move(runs);
    out["merged_counts"] = counts_json(b.merged_histogram());
    if (b.estimate) {
        out["estimate"] = {{"x_hat", b.estimate->x_hat},
                           {"runs", b.estimate->runs},
                           {"shots_per_run", b.estimate->shots_per_run}};
    } else {
        out["estimate"] = nullptr;
    }
    out["l1_error"] = optional_json(b.l1_error);
    out["success_rate"] = b.success_rate;
    out["success_probability"] = b.success_probability;
    if (b.clock_leakage) {
        out["clock_leakage"] = *b.clock_leakage;
    }
    out["timing"] = timing_json(b.prepare_seconds, b.sample_seconds);
    return out;
}

std::string fmt_double(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

}  // namespace

ordered_json report_to_json(const ExperimentReport &report) {
    const auto &cfg = report.config;
    ordered_json doc;
    doc["config"] = {{"problem", cfg.problem},
                     {"backend", to_string(cfg.backend)},
                     {"shots", cfg.shots},
                     {"repeats", cfg.repeats},
                     {"seed", cfg.seed},
                     {"m_override", cfg.m_override ? ordered_json(*cfg.m_override) : ordered_json(nullptr)},
                     {"round_eigs", cfg.round_eigs},
                     {"format", to_string(cfg.format)}};
    ordered_json backends = ordered_json::object();
    for (const auto &b : report.backends) {
        backends[b.name] = backend_json(b);
    }
    doc["backends"] = std::move(backends);

    const auto &p = report.problem;
    ordered_json cross;
    cross["problem"] = {{"n", p.n},
                        {"eigenvalues", p.eigenvalues},
                        {"kappa", p.kappa},
                        {"m", p.m},
                        {"exact_ratio", p.exact},
                        {"scaled_eigenvalues", p.scaled_eigenvalues},
                        {"rotation_constant", p.rotation_constant},
                        {"t", p.t},
                        {"truth", p.truth}};
    if (report.histogram_mae) {
        cross["histogram_mae"] = *report.histogram_mae;
    }
    doc["cross"] = std::move(cross);
    doc["environment"] = {{"host", report.environment}};
    return doc;
}

ordered_json strip_nondeterministic(ordered_json doc) {
    if (doc.is_object()) {
        doc.erase("timing");
        doc.erase("environment");
        for (auto &[key, value] : doc.items()) {
            value = strip_nondeterministic(std::move(value));
        }
    } else if (doc.is_array()) {
        for (auto &value : doc) {
            value = strip_nondeterministic(std::move(value));
        }
    }
    return doc;
}

std::string report_runs_csv(const ExperimentReport &report) {
    std::ostringstream out;
    out << "run,backend,label,count\n";
    for (const auto &b : report.backends) {
        for (const auto &r : b.runs) {
            for (const auto &[label, c] : r.histogram.counts) {
                out << r.run << "," << b.name << "," << label << "," << c << "\n";
            }
        }
    }
    return out.str();
}

std::string report_summary_csv(const ExperimentReport &report) {
    std::ostringstream out;
    out << "section,key,value\n";
    const auto &cfg = report.config;
    out << "config,problem," << cfg.problem << "\n";
    out << "config,backend," << to_string(cfg.backend) << "\n";
    out << "config,shots," << cfg.shots << "\n";
    out << "config,repeats," << cfg.repeats << "\n";
    out << "config,seed," << cfg.seed << "\n";
    out << "config,m_override," << (cfg.m_override ? std::to_string(*cfg.m_override) : "") << "\n";
    out << "config,round_eigs," << (cfg.round_eigs ? "true" : "false") << "\n";
    for (std::size_t i = 0; i < report.problem.truth.size(); ++i) {
        out << "cross,truth_" << i << "," << fmt_double(report.problem.truth[i]) << "\n";
    }
    out << "cross,m," << report.problem.m << "\n";
    out << "cross,kappa," << fmt_double(report.problem.kappa) << "\n";
    if (report.histogram_mae) {
        out << "cross,histogram_mae," << fmt_double(*report.histogram_mae) << "\n";
    }
    for (const auto &b : report.backends) {
        if (b.estimate) {
            for (std::size_t i = 0; i < b.estimate->x_hat.size(); ++i) {
                out << b.name << ",x_hat_" << i << "," << fmt_double(b.estimate->x_hat[i]) << "\n";
            }
        }
        out << b.name << ",l1_error," << (b.l1_error ? fmt_double(*b.l1_error) : "") << "\n";
        out << b.name << ",success_rate," << fmt_double(b.success_rate) << "\n";
        out << b.name << ",success_probability," << fmt_double(b.success_probability) << "\n";
        out << b.name << ",prepare_s," << fmt_double(b.prepare_seconds) << "\n";
        out << b.name << ",sample_s," << fmt_double(b.sample_seconds) << "\n";
        out << b.name << ",total_s," << fmt_double(b.total_seconds()) << "\n";
    }
    return out.str();
}

std::filesystem::path summary_path_for(const std::filesystem::path &csv_path) {
    auto out = csv_path;
    out.replace_extension(".summary.csv");
    return out;
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    }
    out << text;
    out.flush();
    if (!out) {
        throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
    }
}

void emit_report(const ExperimentReport &report, ReportFormat format, const std::filesystem::path &path) {
    if (format == ReportFormat::Json) {
        write_text_file(path, report_to_json(report).dump(2) + "\n");
        return;
    }
    write_text_file(path, report_runs_csv(report));
    write_text_file(summary_path_for(path), report_summary_csv(report));
}

ordered_json sweep_to_json(const std::string &problem, const std::vector<SweepRow> &rows) {
    ordered_json arr = ordered_json::array();
    for (const auto &r : rows) {
        arr.push_back({{"m", r.m},
                       {"backend", r.backend},
                       {"exact_ratio", r.exact},
                       {"prepare_s", r.prepare_seconds},
                       {"sample_s", r.sample_seconds},
                       {"total_s", r.total_seconds()}});
    }
    return {{"problem", problem}, {"rows", std::move(arr)}, {"environment", {{"host", environment_description()}}}};
}

std::string sweep_to_csv(const std::vector<SweepRow> &rows) {
    std::ostringstream out;
    out << "m,backend,exact_ratio,prepare_s,sample_s,total_s\n";
    for (const auto &r : rows) {
        out << r.m << "," << r.backend << "," << (r.exact ? "true" : "false") << "," << fmt_double(r.prepare_seconds)
            << "," << fmt_double(r.sample_seconds) << "," << fmt_double(r.total_seconds()) << "\n";
    }
    return out.str();
}

void emit_sweep(const std::string &problem, const std::vector<SweepRow> &rows, ReportFormat format,
                const std::filesystem::path &path) {
    if (format == ReportFormat::Json) {
        write_text_file(path, sweep_to_json(problem, rows).dump(2) + "\n");
    } else {
        write_text_file(path, sweep_to_csv(rows));
    }
}

}  // namespace hhl
