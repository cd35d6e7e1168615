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

#include "hhl/statevec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hhl/error.hpp"

namespace hhl {

namespace {

int total_width(const std::vector<QubitRegister> &regs) {
    int total = 0;
    for (const auto &r : regs) {
        if (r.width < 0) {
            throw Error(ErrorCode::InvalidArgument, "register '" + r.name + "' has negative width");
        }
        total += r.width;
    }
    return total;
}

std::vector<QubitRegister> with_offsets(std::vector<QubitRegister> regs) {
    int offset = 0;
    for (auto &r : regs) {
        r.offset = offset;
        offset += r.width;
    }
    return regs;
}

inline std::uint64_t insert_zero_bit(std::uint64_t value, int bit) {
    const std::uint64_t low = value & ((std::uint64_t{1} << bit) - 1);
    return ((value >> bit) << (bit + 1)) | low;
}

}  // namespace

StateVector::StateVector(std::vector<QubitRegister> registers)
    : registers_(with_offsets(std::move(registers))), num_qubits_(total_width(registers_)) {
    if (num_qubits_ < 1 || num_qubits_ > kMaxSimulatedQubits) {
        throw Error(ErrorCode::InvalidArgument,
                    "state needs between 1 and 30 qubits, got " + std::to_string(num_qubits_));
    }
    amplitudes_ = Vector::Zero(Eigen::Index{1} << num_qubits_);
    amplitudes_(0) = 1.0;
}

StateVector::StateVector(int num_qubits) : StateVector(std::vector<QubitRegister>{{"q", 0, num_qubits}}) {}

const QubitRegister &StateVector::find_register(const std::string &name) const {
    for (const auto &r : registers_) {
        if (r.name == name) {
            return r;
        }
    }
    throw Error(ErrorCode::IndexOutOfRange, "no register named '" + name + "'");
}

GateKind GateOp::kind() const {
    if (targets.size() > 1) {
        return GateKind::Register;
    }
    return controls.empty() ? GateKind::SingleQubit : GateKind::Controlled;
}

namespace gates {

GateOp hadamard(int qubit) {
    const double s = std::numbers::sqrt2 / 2.0;
    Matrix m(2, 2);
    m << s, s, s, -s;
    return {"h", {qubit}, m, {}, {}};
}

GateOp pauli_x(int qubit) {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return {"x", {qubit}, m, {}, {}};
}

GateOp ry(int qubit, double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    Matrix m(2, 2);
    m << c, -s, s, c;
    return {"ry", {qubit}, m, {}, {theta}};
}

GateOp phase(int qubit, double phi) {
    Matrix m = Matrix::Identity(2, 2);
    m(1, 1) = std::polar(1.0, phi);
    return {"p", {qubit}, m, {}, {phi}};
}

GateOp swap(int a, int b) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
    return {"swap", {a, b}, m, {}, {}};
}

GateOp unitary(std::string name, std::vector<int> targets, Matrix payload) {
    return {std::move(name), std::move(targets), std::move(payload), {}, {}};
}

GateOp controlled(GateOp gate, std::vector<Control> controls) {
    gate.name = std::string(controls.size(), 'c') + gate.name;
    gate.controls.insert(gate.controls.end(), controls.begin(), controls.end());
    return gate;
}

}  // namespace gates

double unitarity_defect(const Matrix &g) {
    const Eigen::Index rows = g.rows(), cols = g.cols();
    const Complex *d = g.data();  // column-major
    double worst = 0.0;
    for (Eigen::Index r = 0; r < cols; ++r) {
        const Complex *col_r = d + r * rows;
        for (Eigen::Index c = r; c < cols; ++c) {
            const Complex *col_c = d + c * rows;
            double re = 0.0, im = 0.0;
            for (Eigen::Index k = 0; k < rows; ++k) {
                const double ar = col_r[k].real(), ai = col_r[k].imag();
                const double br = col_c[k].real(), bi = col_c[k].imag();
                re += ar * br + ai * bi;
                im += ar * bi - ai * br;
            }
            if (r == c) {
                re -= 1.0;
            }
            worst = std::max(worst, re * re + im * im);
        }
    }
    return std::sqrt(worst);
}

void validate_gate(const StateVector &state, const GateOp &gate) {
    const int nq = state.num_qubits();
    const int k = static_cast<int>(gate.targets.size());
    if (k == 0) {
        throw Error(ErrorCode::InvalidArgument, "gate '" + gate.name + "' has no targets");
    }
    const Eigen::Index local = Eigen::Index{1} << k;
    if (gate.payload.rows() != local || gate.payload.cols() != local) {
        throw Error(ErrorCode::DimensionMismatch, "gate '" + gate.name + "' payload does not match its " +
                                                      std::to_string(k) + " target(s)");
    }

    std::uint64_t used = 0;
    auto claim = [&](int q) {
        if (q < 0 || q >= nq) {
            throw Error(ErrorCode::IndexOutOfRange,
                        "qubit " + std::to_string(q) + " outside a " + std::to_string(nq) + "-qubit state");
        }
        const std::uint64_t bit = std::uint64_t{1} << q;
        if (used & bit) {
            throw Error(ErrorCode::IndexOutOfRange,
                        "qubit " + std::to_string(q) + " used twice by gate '" + gate.name + "'");
        }
        used |= bit;
    };
    for (int q : gate.targets) {
        claim(q);
    }
    for (const auto &c : gate.controls) {
        claim(c.qubit);
    }

    const double defect = unitarity_defect(gate.payload);
    if (defect > 1e-12 * static_cast<double>(local)) {
        std::ostringstream msg;
        msg << "gate '" << gate.name << "' deviates from unitarity by " << defect;
        throw Error(ErrorCode::NonUnitaryGate, msg.str());
    }
}

void apply_gate(StateVector &state, const GateOp &gate) {
    validate_gate(state, gate);
    apply_validated_gate(state, gate);
}

void apply_validated_gate(StateVector &state, const GateOp &gate) {
    const int k = static_cast<int>(gate.targets.size());
    const Eigen::Index local = Eigen::Index{1} << k;
    std::uint64_t control_mask = 0, control_value = 0;
    for (const auto &c : gate.controls) {
        control_mask |= std::uint64_t{1} << c.qubit;
        if (c.value) {
            control_value |= std::uint64_t{1} << c.qubit;
        }
    }

    Complex *amp = state.amplitudes().data();
    const std::uint64_t groups = state.size() >> k;

    if (k == 1) {
        const int t = gate.targets[0];
        const std::uint64_t stride = std::uint64_t{1} << t;
        const Complex g00 = gate.payload(0, 0), g01 = gate.payload(0, 1);
        const Complex g10 = gate.payload(1, 0), g11 = gate.payload(1, 1);
        for (std::uint64_t i = 0; i < groups; ++i) {
            const std::uint64_t i0 = insert_zero_bit(i, t);
            if ((i0 & control_mask) != control_value) {
                continue;
            }
            const Complex a0 = amp[i0], a1 = amp[i0 | stride];
            amp[i0] = g00 * a0 + g01 * a1;
            amp[i0 | stride] = g10 * a0 + g11 * a1;
        }
        return;
    }

    // Up to three targets use stack buffers; wider register gates fall back to
    // heap storage.
    constexpr int kInline = 3;
    std::array<int, kInline> sorted_small{};
    std::array<std::uint64_t, 1 << kInline> offsets_small{};
    std::array<Complex, 1 << kInline> in_small{};
    std::vector<int> sorted_big;
    std::vector<std::uint64_t> offsets_big;
    std::vector<Complex> in_big;
    int *sorted = sorted_small.data();
    std::uint64_t *offsets = offsets_small.data();
    Complex *in = in_small.data();
    if (k > kInline) {
        sorted_big.resize(static_cast<std::size_t>(k));
        offsets_big.resize(static_cast<std::size_t>(local));
        in_big.resize(static_cast<std::size_t>(local));
        sorted = sorted_big.data();
        offsets = offsets_big.data();
        in = in_big.data();
    }
    std::copy(gate.targets.begin(), gate.targets.end(), sorted);
    std::sort(sorted, sorted + k);
    for (Eigen::Index l = 0; l < local; ++l) {
        std::uint64_t off = 0;
        for (int b = 0; b < k; ++b) {
            if ((static_cast<std::uint64_t>(l) >> b) & 1U) {
                off |= std::uint64_t{1} << gate.targets[static_cast<std::size_t>(b)];
            }
        }
        offsets[l] = off;
    }
    const Complex *g = gate.payload.data();  // column-major
    for (std::uint64_t i = 0; i < groups; ++i) {
        std::uint64_t base = i;
        for (int b = 0; b < k; ++b) {
            base = insert_zero_bit(base, sorted[b]);
        }
        if ((base & control_mask) != control_value) {
            continue;
        }
        for (Eigen::Index l = 0; l < local; ++l) {
            in[l] = amp[base | offsets[l]];
        }
        for (Eigen::Index r = 0; r < local; ++r) {
            Complex acc = 0.0;
            for (Eigen::Index c = 0; c < local; ++c) {
                acc += g[c * local + r] * in[c];
            }
            amp[base | offsets[r]] = acc;
        }
    }
}

std::string describe(const GateOp &gate) {
    std::ostringstream line;
    line.precision(17);
    line << gate.name << " t=";
    for (std::size_t i = 0; i < gate.targets.size(); ++i) {
        line << (i ? "," : "") << gate.targets[i];
    }
    if (!gate.controls.empty()) {
        line << " c=";
        for (std::size_t i = 0; i < gate.controls.size(); ++i) {
            line << (i ? "," : "") << gate.controls[i].qubit << ":" << (gate.controls[i].value ? 1 : 0);
        }
    }
    if (!gate.params.empty()) {
        line << " p=";
        for (std::size_t i = 0; i < gate.params.size(); ++i) {
            line << (i ? "," : "") << gate.params[i];
        }
    }
    return line.str();
}

void GateTrace::record(const GateOp &gate) {
    lines_.push_back(std::to_string(lines_.size()) + " " + describe(gate));
}

std::string GateTrace::str() const {
    std::string out;
    for (const auto &l : lines_) {
        out += l;
        out += '\n';
    }
    return out;
}

}  // namespace hhl
