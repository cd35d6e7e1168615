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

// Eigenbasis emulation of the ideal HHL output.
//
// After an ideal run the clock register is back in |0...0>, so the joint state
// of (b, ancilla) is
//
//   sum_j beta_j |u_j> ( sqrt(1 - C^2/l_j^2) |0> + (C/l_j) |1> )
//
// with l_j the clock-scaled eigenvalues. The emulator writes this state down
// directly from the spectral data; nothing here depends on the clock width m.

#include <cstdint>
#include <vector>

#include "hhl/linsys.hpp"
#include "hhl/sampling.hpp"

namespace hhl {

/// Amplitudes over the (b, ancilla) space, indexed 2 * b + a.
struct EmulatedState {
    Vector amplitudes;
    int b_qubits = 0;

    std::vector<double> probabilities() const;
    /// P(ancilla = 1).
    double success_probability() const;
};

/// Builds the post-algorithm state from `spec`. For exact plans the clock
/// integers are used as is. For inexact plans `round_eigs` selects the rounded
/// clock integers (what a finite clock resolves); otherwise the unrounded
/// scaled eigenvalues give ideal inversion.
EmulatedState prepare_emulated_state(const HermitianSystem &sys, const SpectralData &spec, bool round_eigs = false);

/// P(b = i | ancilla = 1) for every b-register value i.
std::vector<double> postselect_ancilla(const EmulatedState &state);

ShotHistogram sample(const EmulatedState &state, std::uint64_t shots, std::uint64_t seed);

/// x = A^{-1} b by Gaussian elimination with partial pivoting. Deliberately
/// independent of the eigendecomposition so it can serve as ground truth.
Vector classical_solution(const HermitianSystem &sys);

/// |x_i|^2 / |x|^2, the distribution the post-selected b register samples.
std::vector<double> solution_distribution(const Vector &x);

}  // namespace hhl
