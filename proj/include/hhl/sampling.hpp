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

// Seeded shot sampling shared by both backends.
//
// The generator is std::mt19937_64 seeded with the user seed. Each shot consumes
// exactly one 64-bit output, mapped to a double in [0, 1) from its top 53 bits;
// the outcome is the first index whose cumulative probability exceeds that
// value. Both the engine and the mapping are fully specified, so histograms are
// identical across platforms and standard libraries.

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace hhl {

/// Little-endian outcome label |b a>: the b-register value written MSB first
/// in `b_qubits` digits, followed by the ancilla bit. Index = 2 * b + a.
std::string outcome_label(std::uint64_t index, int b_qubits);

/// Counts per outcome label. Every label of the (b, ancilla) space is present,
/// including those with zero counts.
struct ShotHistogram {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots = 0;
    int b_qubits = 0;

    std::uint64_t count(const std::string &label) const;
    double frequency(const std::string &label) const;
};

/// A histogram over all 2^(b_qubits+1) labels with zero counts.
ShotHistogram empty_histogram(int b_qubits);

/// Sums counts label by label; all inputs must share b_qubits.
ShotHistogram merge_histograms(std::span<const ShotHistogram> parts);

class ShotRng {
public:
    explicit ShotRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

/// Inverse-CDF sampling of `shots` outcomes from `probabilities` (which need
/// not be normalized exactly; the cumulative total is used as the upper end).
/// Returns counts per index.
std::vector<std::uint64_t> sample_counts(std::span<const double> probabilities, std::uint64_t shots,
                                         std::uint64_t seed);

/// Samples the (b, ancilla) distribution indexed by 2 * b + a.
ShotHistogram sample_histogram(std::span<const double> probabilities, int b_qubits, std::uint64_t shots,
                               std::uint64_t seed);

}  // namespace hhl
