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

#include "hhl/sampling.hpp"

#include <algorithm>

#include "hhl/error.hpp"

namespace hhl {

std::string outcome_label(std::uint64_t index, int b_qubits) {
    const int width = b_qubits + 1;
    std::string label(static_cast<std::size_t>(width), '0');
    for (int bit = 0; bit < width; ++bit) {
        if ((index >> bit) & 1U) {
            label[static_cast<std::size_t>(width - 1 - bit)] = '1';
        }
    }
    return label;
}

std::uint64_t ShotHistogram::count(const std::string &label) const {
    auto it = counts.find(label);
    return it == counts.end() ? 0 : it->second;
}

double ShotHistogram::frequency(const std::string &label) const {
    return shots == 0 ? 0.0 : static_cast<double>(count(label)) / static_cast<double>(shots);
}

ShotHistogram empty_histogram(int b_qubits) {
    ShotHistogram h;
    h.b_qubits = b_qubits;
    const std::uint64_t outcomes = std::uint64_t{1} << (b_qubits + 1);
    for (std::uint64_t i = 0; i < outcomes; ++i) {
        h.counts.emplace(outcome_label(i, b_qubits), 0);
    }
    return h;
}

ShotHistogram merge_histograms(std::span<const ShotHistogram> parts) {
    if (parts.empty()) {
        throw Error(ErrorCode::EmptyList, "no histograms to merge");
    }
    ShotHistogram out = empty_histogram(parts.front().b_qubits);
    for (const auto &h : parts) {
        if (h.b_qubits != out.b_qubits) {
            throw Error(ErrorCode::DimensionMismatch, "histograms over different label spaces");
        }
        for (const auto &[label, c] : h.counts) {
            out.counts[label] += c;
        }
        out.shots += h.shots;
    }
    return out;
}

std::vector<std::uint64_t> sample_counts(std::span<const double> probabilities, std::uint64_t shots,
                                         std::uint64_t seed) {
    if (probabilities.empty()) {
        throw Error(ErrorCode::EmptyList, "empty distribution");
    }
    if (shots < 1) {
        throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");
    }
    std::vector<double> cdf(probabilities.size());
    double total = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (!(probabilities[i] >= 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "negative or NaN probability");
        }
        total += probabilities[i];
        cdf[i] = total;
        if (probabilities[i] > 0.0) {
            last_nonzero = i;
        }
    }
    if (!(total > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "distribution has zero total mass");
    }

    std::vector<std::uint64_t> counts(probabilities.size(), 0);
    ShotRng rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        double u = rng.uniform() * total;
        auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        counts[std::min(idx, last_nonzero)] += 1;
    }
    return counts;
}

ShotHistogram sample_histogram(std::span<const double> probabilities, int b_qubits, std::uint64_t shots,
                               std::uint64_t seed) {
    const std::size_t outcomes = std::size_t{1} << (b_qubits + 1);
    if (probabilities.size() != outcomes) {
        throw Error(ErrorCode::DimensionMismatch, "distribution size does not match the (b, ancilla) space");
    }
    auto counts = sample_counts(probabilities, shots, seed);
    ShotHistogram h = empty_histogram(b_qubits);
    for (std::size_t i = 0; i < outcomes; ++i) {
        h.counts[outcome_label(i, b_qubits)] = counts[i];
    }
    h.shots = shots;
    return h;
}

}  // namespace hhl
