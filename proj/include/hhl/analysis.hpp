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

#include <cstdint>
#include <span>
#include <vector>

#include "hhl/sampling.hpp"

namespace hhl {

/// Estimated |x_i|^2 / |x|^2 from ancilla = 1 counts. Component i belongs to
/// b-register value i.
struct SolutionEstimate {
    std::vector<double> x_hat;
    std::uint64_t runs = 1;
    std::uint64_t shots_per_run = 0;
};

/// Throws ZeroSuccessCounts when no shot heralded ancilla = 1.
SolutionEstimate estimate_x(const ShotHistogram &hist);

/// Componentwise mean, renormalized to sum 1.
SolutionEstimate aggregate_estimates(std::span<const SolutionEstimate> estimates);

/// Fraction of shots with ancilla = 1.
double success_rate(const ShotHistogram &hist);

/// sum_i |est_i - truth_i|.
double l1_error(std::span<const double> estimate, std::span<const double> truth);

/// Mean over all (b, ancilla) labels of |f1(label) - f2(label)|, on
/// frequencies, so the two shot totals may differ.
double histogram_mae(const ShotHistogram &h1, const ShotHistogram &h2);

}  // namespace hhl
