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

#include "hhl/analysis.hpp"

#include <cmath>
#include <set>

#include "hhl/error.hpp"

namespace hhl {

SolutionEstimate estimate_x(const ShotHistogram &hist) {
    const std::size_t dim = std::size_t{1} << hist.b_qubits;
    std::vector<double> x(dim, 0.0);
    double total = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
        const auto c = static_cast<double>(hist.count(outcome_label(2 * b + 1, hist.b_qubits)));
        x[b] = c;
        total += c;
    }
    if (total <= 0.0) {
        throw Error(ErrorCode::ZeroSuccessCounts, "histogram has no ancilla = 1 outcomes");
    }
    for (auto &v : x) {
        v /= total;
    }
    return {std::move(x), 1, hist.shots};
}

SolutionEstimate aggregate_estimates(std::span<const SolutionEstimate> estimates) {
    if (estimates.empty()) {
        throw Error(ErrorCode::EmptyList, "no estimates to aggregate");
    }
    const std::size_t dim = estimates.front().x_hat.size();
    SolutionEstimate out;
    out.x_hat.assign(dim, 0.0);
    out.runs = 0;
    out.shots_per_run = estimates.front().shots_per_run;
    for (const auto &e : estimates) {
        if (e.x_hat.size() != dim) {
            throw Error(ErrorCode::DimensionMismatch, "estimates have different dimensions");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            out.x_hat[i] += e.x_hat[i];
        }
        out.runs += e.runs;
    }
    double total = 0.0;
    for (double v : out.x_hat) {
        total += v;
    }
    for (auto &v : out.x_hat) {
        v /= total;
    }
    return out;
}

double success_rate(const ShotHistogram &hist) {
    if (hist.shots == 0) {
        return 0.0;
    }
    std::uint64_t hits = 0;
    for (const auto &[label, c] : hist.counts) {
        if (!label.empty() && label.back() == '1') {
            hits += c;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(hist.shots);
}

double l1_error(std::span<const double> estimate, std::span<const double> truth) {
    if (estimate.size() != truth.size()) {
        throw Error(ErrorCode::DimensionMismatch, "estimate and truth differ in length");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < estimate.size(); ++i) {
        total += std::abs(estimate[i] - truth[i]);
    }
    return total;
}

double histogram_mae(const ShotHistogram &h1, const ShotHistogram &h2) {
    if (h1.b_qubits != h2.b_qubits) {
        throw Error(ErrorCode::DimensionMismatch, "histograms over different label spaces");
    }
    std::set<std::string> labels;
    for (const auto &kv : empty_histogram(h1.b_qubits).counts) {
        labels.insert(kv.first);
    }
    double total = 0.0;
    for (const auto &label : labels) {
        total += std::abs(h1.frequency(label) - h2.frequency(label));
    }
    return total / static_cast<double>(labels.size());
}

}  // namespace hhl
