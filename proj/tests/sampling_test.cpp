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

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace hhl {
namespace {

TEST(OutcomeLabel, LittleEndianBThenAncilla) {
    EXPECT_EQ(outcome_label(0, 1), "00");
    EXPECT_EQ(outcome_label(1, 1), "01");
    EXPECT_EQ(outcome_label(2, 1), "10");
    EXPECT_EQ(outcome_label(3, 1), "11");
    // b = 2 (binary 10), a = 1.
    EXPECT_EQ(outcome_label(5, 2), "101");
    EXPECT_EQ(outcome_label(6, 2), "110");
}

TEST(EmptyHistogram, HasEveryLabel) {
    const auto h = empty_histogram(2);
    EXPECT_EQ(h.counts.size(), 8u);
    EXPECT_EQ(h.shots, 0u);
    EXPECT_EQ(h.count("111"), 0u);
    EXPECT_EQ(h.frequency("111"), 0.0);
}

TEST(SampleCounts, SingleShot) {
    const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
    const auto counts = sample_counts(p, 1, 5);
    EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}), 1u);
}

TEST(SampleCounts, DeterministicOutcomeFillsOneBucket) {
    const std::vector<double> p{0.0, 0.0, 1.0, 0.0};
    const auto counts = sample_counts(p, 500, 3);
    EXPECT_EQ(counts[2], 500u);
}

TEST(SampleCounts, SameSeedSameCounts) {
    const std::vector<double> p{0.1875, 0.0625, 0.1875, 0.5625};
    EXPECT_EQ(sample_counts(p, 2048, 42), sample_counts(p, 2048, 42));
    EXPECT_NE(sample_counts(p, 2048, 42), sample_counts(p, 2048, 43));
}

// Inverse-CDF sampling from the documented generator, rebuilt here.
TEST(SampleCounts, MatchesDocumentedGenerator) {
    const std::vector<double> p{0.25, 0.5, 0.125, 0.125};
    std::mt19937_64 engine(99);
    std::vector<std::uint64_t> expected(4, 0);
    for (int s = 0; s < 1000; ++s) {
        const double u = static_cast<double>(engine() >> 11) * std::ldexp(1.0, -53);
        double acc = 0.0;
        std::size_t k = 0;
        for (; k < p.size(); ++k) {
            acc += p[k];
            if (u < acc) {
                break;
            }
        }
        ++expected[std::min(k, p.size() - 1)];
    }
    EXPECT_EQ(sample_counts(p, 1000, 99), expected);
}

TEST(SampleCounts, FrequenciesConverge) {
    const std::vector<double> p{0.1, 0.05, 0.6, 0.25};
    const std::uint64_t shots = 200000;
    const auto counts = sample_counts(p, shots, 7);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double sigma = std::sqrt(p[i] * (1 - p[i]) / static_cast<double>(shots));
        EXPECT_NEAR(static_cast<double>(counts[i]) / static_cast<double>(shots), p[i], 5 * sigma);
    }
}

TEST(SampleCounts, RejectsBadInput) {
    const std::vector<double> ok{0.5, 0.5}, negative{-0.1, 1.1}, zero{0.0, 0.0};
    EXPECT_HHL_ERROR(sample_counts(ok, 0, 1), ErrorCode::InvalidArgument);
    EXPECT_HHL_ERROR(sample_counts(negative, 1, 1), ErrorCode::InvalidArgument);
    EXPECT_HHL_ERROR(sample_counts(zero, 1, 1), ErrorCode::InvalidArgument);
    EXPECT_HHL_ERROR(sample_counts(std::span<const double>(), 1, 1), ErrorCode::EmptyList);
    EXPECT_HHL_ERROR(sample_histogram(ok, 1, 1, 1), ErrorCode::DimensionMismatch);
}

TEST(SampleHistogram, TotalsMatchShots) {
    const std::vector<double> p{0.1875, 0.0625, 0.1875, 0.5625};
    const auto h = sample_histogram(p, 1, 2048, 1);
    std::uint64_t total = 0;
    for (const auto &[label, c] : h.counts) {
        total += c;
    }
    EXPECT_EQ(total, 2048u);
    EXPECT_EQ(h.shots, 2048u);
    EXPECT_EQ(h.b_qubits, 1);
}

TEST(MergeHistograms, SumsLabelByLabel) {
    const std::vector<double> p{0.25, 0.25, 0.25, 0.25};
    const std::vector<ShotHistogram> parts{sample_histogram(p, 1, 100, 1), sample_histogram(p, 1, 300, 2)};
    const auto merged = merge_histograms(parts);
    EXPECT_EQ(merged.shots, 400u);
    for (const auto &[label, c] : merged.counts) {
        EXPECT_EQ(c, parts[0].count(label) + parts[1].count(label));
    }
}

TEST(MergeHistograms, RejectsMixedWidthsAndEmpty) {
    const std::vector<ShotHistogram> mixed{empty_histogram(1), empty_histogram(2)};
    EXPECT_HHL_ERROR(merge_histograms(mixed), ErrorCode::DimensionMismatch);
    EXPECT_HHL_ERROR(merge_histograms(std::span<const ShotHistogram>()), ErrorCode::EmptyList);
}

}  // namespace
}  // namespace hhl
