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

// The HHL circuit, gate by gate, on a StateVector with registers
//   ancilla "a" (bit 0) | clock "c" (bits 1..m) | "b" (bits m+1..m+n).
// Clock qubit k carries weight 2^k of the clock integer.

#include <cstdint>
#include <vector>

#include "hhl/linsys.hpp"
#include "hhl/sampling.hpp"
#include "hhl/statevec.hpp"

namespace hhl {

struct HhlLayout {
    int m = 0;  // clock width
    int n = 0;  // b width

    int ancilla() const { return 0; }
    int clock(int k) const { return 1 + k; }
    int b(int i) const { return 1 + m + i; }
    int total() const { return 1 + m + n; }
    std::vector<int> clock_qubits() const;
    std::vector<int> b_qubits() const;

    /// Reads m and n back from a state built by make_hhl_state().
    static HhlLayout of(const StateVector &state);
};

StateVector make_hhl_state(const HhlLayout &layout);

/// exp(i A t) = U diag(e^{i lambda_j t}) U^dagger, from already computed
/// spectral data. Throws NonUnitaryGate if the result drifts from unitarity
/// by more than 1e-10.
Matrix evolution_operator(const SpectralData &spec);

/// Loads b into the b register with a unitary whose first column is b
/// (a phased Householder reflection).
void state_prep_b(StateVector &state, const Vector &b, GateTrace *trace = nullptr);

/// Applies the controlled `evolution` gate `power` times to the b register,
/// conditioned on qubit `control`.
void controlled_evolution(StateVector &state, const Matrix &evolution, std::uint64_t power, int control,
                          GateTrace *trace = nullptr);

void qft(StateVector &state, GateTrace *trace = nullptr);
/// Hadamards and controlled phases -pi/2^d, then the bit-reversal swaps.
void iqft(StateVector &state, GateTrace *trace = nullptr);

/// Hadamards on the clock, controlled evolution^(2^k) from clock qubit k, IQFT.
void qpe(StateVector &state, const Matrix &evolution, GateTrace *trace = nullptr);
/// Exact adjoint of qpe().
void iqpe(StateVector &state, const Matrix &evolution, GateTrace *trace = nullptr);

/// For every clock value k in [1, 2^m), a Y-rotation of the ancilla by
/// 2 asin(C / k), controlled on the full clock pattern of k. Clock values
/// below C saturate at a full flip. Throws RotationDomain when C is not
/// positive or exceeds every representable clock value.
void eigenvalue_inversion(StateVector &state, double rotation_constant, GateTrace *trace = nullptr);

/// state_prep_b -> qpe -> eigenvalue_inversion -> iqpe.
StateVector run_hhl_circuit(const HermitianSystem &sys, const SpectralData &spec, GateTrace *trace = nullptr);

/// Joint (b, ancilla) distribution with the clock summed out, indexed 2 * b + a.
std::vector<double> reduced_distribution(const StateVector &state);

/// Amplitudes of the clock = 0 slice, indexed 2 * b + a.
Vector clock_zero_amplitudes(const StateVector &state);

/// Total probability on clock values other than 0.
double clock_leakage(const StateVector &state);

/// Samples the full state, drops the clock bits from each outcome and returns
/// the (b, ancilla) histogram. Writes a warning to std::clog when more than
/// 1e-6 of the mass sits on nonzero clock values.
ShotHistogram measure_all(const StateVector &state, std::uint64_t shots, std::uint64_t seed);

}  // namespace hhl
