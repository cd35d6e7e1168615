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

// Dense state-vector simulator: a unit vector of 2^q complex amplitudes and a
// gate kernel that updates it in place. Qubit k is bit k of the amplitude
// index.

#include <cstdint>
#include <string>
#include <vector>

#include "hhl/linsys.hpp"

namespace hhl {

inline constexpr int kMaxSimulatedQubits = 30;

/// A named, contiguous group of qubits [offset, offset + width).
struct QubitRegister {
    std::string name;
    int offset = 0;
    int width = 0;
};

class StateVector {
public:
    /// |0...0> over the concatenation of `registers`, the first one occupying
    /// the least significant bits.
    explicit StateVector(std::vector<QubitRegister> registers);
    /// |0...0> over `num_qubits` anonymous qubits.
    explicit StateVector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t size() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const Vector &amplitudes() const { return amplitudes_; }
    Vector &amplitudes() { return amplitudes_; }
    const std::vector<QubitRegister> &registers() const { return registers_; }
    /// Throws IndexOutOfRange when no register has this name.
    const QubitRegister &find_register(const std::string &name) const;

    double norm() const { return amplitudes_.norm(); }

private:
    std::vector<QubitRegister> registers_;
    int num_qubits_ = 0;
    Vector amplitudes_;
};

struct Control {
    int qubit = 0;
    bool value = true;
};

enum class GateKind { SingleQubit, Controlled, Register };

/// A (possibly controlled) unitary on `targets`. targets[0] is the least
/// significant bit of the payload's row/column index.
struct GateOp {
    std::string name;
    std::vector<int> targets;
    Matrix payload;
    std::vector<Control> controls;
    /// Angles etc., kept only for the trace.
    std::vector<double> params;

    GateKind kind() const;
};

namespace gates {

GateOp hadamard(int qubit);
GateOp pauli_x(int qubit);
/// exp(-i theta Y / 2).
GateOp ry(int qubit, double theta);
/// diag(1, e^{i phi}).
GateOp phase(int qubit, double phi);
GateOp swap(int a, int b);
GateOp unitary(std::string name, std::vector<int> targets, Matrix payload);
/// Adds controls to an existing gate, keeping its name with a "c" prefix per control.
GateOp controlled(GateOp gate, std::vector<Control> controls);

}  // namespace gates

/// max |(G^dagger G - I)_{rc}|.
double unitarity_defect(const Matrix &g);

/// Applies `gate` in place. Throws IndexOutOfRange for qubits outside the
/// state or overlapping target/control sets, NonUnitaryGate when the payload
/// is not unitary to 1e-12 per dimension, DimensionMismatch for a payload
/// whose size does not match the target count.
void apply_gate(StateVector &state, const GateOp &gate);

/// The checks apply_gate() performs, without touching the state.
void validate_gate(const StateVector &state, const GateOp &gate);

/// apply_gate() minus validation, for a gate already passed through
/// validate_gate() against a state of the same shape.
void apply_validated_gate(StateVector &state, const GateOp &gate);

/// One text line per applied gate, for debugging:
///   <index> <name> t=<q,...> [c=<q:v,...>] [p=<x,...>]
class GateTrace {
public:
    void record(const GateOp &gate);
    const std::vector<std::string> &lines() const { return lines_; }
    std::string str() const;

private:
    std::vector<std::string> lines_;
};

std::string describe(const GateOp &gate);

}  // namespace hhl
