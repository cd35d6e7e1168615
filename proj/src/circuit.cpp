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

#include "hhl/circuit.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include "hhl/error.hpp"

namespace hhl {

namespace {

std::uint64_t b_index_of(std::uint64_t full, const HhlLayout &layout) {
    return full >> (1 + layout.m);
}

std::uint64_t clock_index_of(std::uint64_t full, const HhlLayout &layout) {
    return (full >> 1) & ((std::uint64_t{1} << layout.m) - 1);
}

// Gate buffers re-aimed before each application, so a circuit run does not
// allocate per gate. One set per thread; a builder only touches it while it
// is applying gates on that thread.
struct GateScratch {
    GateOp h = gates::hadamard(0);
    GateOp cp = gates::controlled(gates::phase(0, 0.0), {{1, true}});
    GateOp swap = gates::swap(0, 1);
    GateOp prep = gates::unitary("prep_b", {0}, Matrix::Identity(2, 2));
    GateOp rotation = gates::controlled(gates::ry(0, 0.0), {});
    GateOp evolution = gates::controlled(gates::unitary("exp_iAt", {}, Matrix()), {{1, true}});
};

GateScratch &scratch() {
    thread_local GateScratch buffers;
    return buffers;
}

// Emits the HHL circuit onto one state. Factory payloads are unitary by
// construction and every index comes from the layout, so only caller-supplied
// payloads go through validate_gate(), once each.
class CircuitBuilder {
public:
    CircuitBuilder(StateVector &state, GateTrace *trace)
        : state_(state),
          layout_(HhlLayout::of(state)),
          trace_(trace),
          h_(scratch().h),
          cp_(scratch().cp),
          swap_(scratch().swap),
          prep_(scratch().prep),
          rotation_(scratch().rotation),
          evo_(scratch().evolution) {}

    const HhlLayout &layout() const { return layout_; }

    void hadamard(int q) {
        h_.targets[0] = q;
        emit(h_);
    }

    void cphase(int control, int target, double phi) {
        cp_.targets[0] = target;
        cp_.controls[0].qubit = control;
        cp_.payload(1, 1) = std::polar(1.0, phi);
        cp_.params[0] = phi;
        emit(cp_);
    }

    void swap(int a, int b) {
        swap_.targets[0] = a;
        swap_.targets[1] = b;
        emit(swap_);
    }

    void state_prep(const Vector &b) {
        const Eigen::Index dim = Eigen::Index{1} << layout_.n;
        if (b.size() != dim) {
            throw Error(ErrorCode::DimensionMismatch, "b does not fit the b register");
        }
        if (std::abs(b.norm() - 1.0) > kUnitNormTolerance) {
            throw Error(ErrorCode::NotUnitVector, "state preparation needs a unit vector");
        }
        // Phased Householder reflection sending |0> to b.
        const double phase = std::abs(b(0)) > 0.0 ? std::arg(b(0)) : 0.0;
        const Complex lead = std::polar(1.0, phase);
        GateOp &gate = prep_;
        gate.targets.resize(static_cast<std::size_t>(layout_.n));
        for (int i = 0; i < layout_.n; ++i) {
            gate.targets[static_cast<std::size_t>(i)] = layout_.b(i);
        }
        Matrix &u = gate.payload;
        u.resize(dim, dim);
        double w_norm2 = 0.0;
        for (Eigen::Index r = 0; r < dim; ++r) {
            const Complex w = (r == 0 ? lead : Complex{}) - b(r);
            w_norm2 += std::norm(w);
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            const Complex wc = std::conj((c == 0 ? lead : Complex{}) - b(c));
            for (Eigen::Index r = 0; r < dim; ++r) {
                const Complex wr = (r == 0 ? lead : Complex{}) - b(r);
                Complex entry = r == c ? Complex{1.0, 0.0} : Complex{};
                if (w_norm2 > 0.0) {
                    entry -= 2.0 * wr * wc / w_norm2;
                }
                u(r, c) = lead * entry;
            }
        }
        emit(gate);
    }

    /// Controlled `evolution`, applied `power` times.
    void evolution(const Matrix &evolution, std::uint64_t power, int control) {
        if (control < 1 || control > layout_.m) {
            throw Error(ErrorCode::IndexOutOfRange, "evolution control must be a clock qubit");
        }
        if (evo_payload_ != &evolution) {
            evo_.targets.resize(static_cast<std::size_t>(layout_.n));
            for (int i = 0; i < layout_.n; ++i) {
                evo_.targets[static_cast<std::size_t>(i)] = layout_.b(i);
            }
            evo_.payload = evolution;
            evo_.controls[0].qubit = control;
            validate_gate(state_, evo_);
            evo_payload_ = &evolution;
        }
        evo_.controls[0].qubit = control;
        for (std::uint64_t p = 0; p < power; ++p) {
            emit(evo_);
        }
    }

    void qft() {
        const int m = layout_.m;
        for (int k = 0; k < m / 2; ++k) {
            swap(layout_.clock(k), layout_.clock(m - 1 - k));
        }
        for (int j = 0; j < m; ++j) {
            hadamard(layout_.clock(j));
            for (int q = j + 1; q < m; ++q) {
                cphase(layout_.clock(q), layout_.clock(j), std::numbers::pi / std::ldexp(1.0, q - j));
            }
        }
    }

    void iqft() {
        const int m = layout_.m;
        for (int j = m - 1; j >= 0; --j) {
            for (int q = m - 1; q > j; --q) {
                cphase(layout_.clock(q), layout_.clock(j), -std::numbers::pi / std::ldexp(1.0, q - j));
            }
            hadamard(layout_.clock(j));
        }
        for (int k = m / 2 - 1; k >= 0; --k) {
            swap(layout_.clock(k), layout_.clock(m - 1 - k));
        }
    }

    void qpe(const Matrix &evo) {
        for (int k = 0; k < layout_.m; ++k) {
            hadamard(layout_.clock(k));
        }
        for (int k = 0; k < layout_.m; ++k) {
            evolution(evo, std::uint64_t{1} << k, layout_.clock(k));
        }
        iqft();
    }

    void iqpe(const Matrix &evo_inverse) {
        qft();
        for (int k = layout_.m - 1; k >= 0; --k) {
            evolution(evo_inverse, std::uint64_t{1} << k, layout_.clock(k));
        }
        for (int k = layout_.m - 1; k >= 0; --k) {
            hadamard(layout_.clock(k));
        }
    }

    void inversion(double c) {
        const std::uint64_t clock_values = std::uint64_t{1} << layout_.m;
        if (!(c > 0.0) || c > static_cast<double>(clock_values - 1)) {
            std::ostringstream msg;
            msg << "rotation constant C = " << c << " outside (0, " << clock_values - 1 << "]";
            throw Error(ErrorCode::RotationDomain, msg.str());
        }
        GateOp &gate = rotation_;
        gate.name.assign(static_cast<std::size_t>(layout_.m), 'c');
        gate.name += "ry";
        gate.targets[0] = layout_.ancilla();
        gate.controls.resize(static_cast<std::size_t>(layout_.m));
        for (int bit = 0; bit < layout_.m; ++bit) {
            gate.controls[static_cast<std::size_t>(bit)].qubit = layout_.clock(bit);
        }
        for (std::uint64_t k = 1; k < clock_values; ++k) {
            const double ratio = std::min(1.0, c / static_cast<double>(k));
            // ry(theta) with sin(theta / 2) = C / k.
            const double keep = std::sqrt(1.0 - ratio * ratio);
            gate.payload(0, 0) = keep;
            gate.payload(0, 1) = -ratio;
            gate.payload(1, 0) = ratio;
            gate.payload(1, 1) = keep;
            gate.params[0] = 2.0 * std::asin(ratio);
            for (int bit = 0; bit < layout_.m; ++bit) {
                gate.controls[static_cast<std::size_t>(bit)].value = ((k >> bit) & 1U) != 0;
            }
            emit(gate);
        }
    }

private:
    void emit(const GateOp &gate) {
        apply_validated_gate(state_, gate);
        if (trace_) {
            trace_->record(gate);
        }
    }

    StateVector &state_;
    HhlLayout layout_;
    GateTrace *trace_;
    GateOp &h_;
    GateOp &cp_;
    GateOp &swap_;
    GateOp &prep_;
    GateOp &rotation_;
    GateOp &evo_;
    const Matrix *evo_payload_ = nullptr;
};

}  // namespace

std::vector<int> HhlLayout::clock_qubits() const {
    std::vector<int> out;
    for (int k = 0; k < m; ++k) {
        out.push_back(clock(k));
    }
    return out;
}

std::vector<int> HhlLayout::b_qubits() const {
    std::vector<int> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(b(i));
    }
    return out;
}

HhlLayout HhlLayout::of(const StateVector &state) {
    const auto &a = state.find_register("a");
    const auto &c = state.find_register("c");
    const auto &b = state.find_register("b");
    if (a.offset != 0 || a.width != 1 || c.offset != 1 || b.offset != 1 + c.width) {
        throw Error(ErrorCode::InvalidArgument, "state is not laid out as (a, c, b)");
    }
    return {c.width, b.width};
}

StateVector make_hhl_state(const HhlLayout &layout) {
    if (layout.m < 1 || layout.n < 1) {
        throw Error(ErrorCode::InvalidArgument, "HHL layout needs m >= 1 and n >= 1");
    }
    return StateVector({{"a", 0, 1}, {"c", 0, layout.m}, {"b", 0, layout.n}});
}

Matrix evolution_operator(const SpectralData &spec) {
    const Eigen::Index dim = spec.eigenvalues.size();
    const Matrix &u = spec.eigenvectors;
    Matrix out = Matrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex phase = std::polar(1.0, spec.eigenvalues(j) * spec.t());
        for (Eigen::Index c = 0; c < dim; ++c) {
            const Complex right = phase * std::conj(u(c, j));
            for (Eigen::Index r = 0; r < dim; ++r) {
                out(r, c) += u(r, j) * right;
            }
        }
    }
    const double defect = unitarity_defect(out);
    if (defect > 1e-10) {
        std::ostringstream msg;
        msg << "exp(iAt) deviates from unitarity by " << defect;
        throw Error(ErrorCode::NonUnitaryGate, msg.str());
    }
    return out;
}

void state_prep_b(StateVector &state, const Vector &b, GateTrace *trace) {
    CircuitBuilder(state, trace).state_prep(b);
}

void controlled_evolution(StateVector &state, const Matrix &evolution, std::uint64_t power, int control,
                          GateTrace *trace) {
    CircuitBuilder(state, trace).evolution(evolution, power, control);
}

void qft(StateVector &state, GateTrace *trace) { CircuitBuilder(state, trace).qft(); }

void iqft(StateVector &state, GateTrace *trace) { CircuitBuilder(state, trace).iqft(); }

void qpe(StateVector &state, const Matrix &evolution, GateTrace *trace) { CircuitBuilder(state, trace).qpe(evolution); }

void iqpe(StateVector &state, const Matrix &evolution, GateTrace *trace) {
    const Matrix inverse = evolution.adjoint();
    CircuitBuilder(state, trace).iqpe(inverse);
}

void eigenvalue_inversion(StateVector &state, double rotation_constant, GateTrace *trace) {
    CircuitBuilder(state, trace).inversion(rotation_constant);
}

StateVector run_hhl_circuit(const HermitianSystem &sys, const SpectralData &spec, GateTrace *trace) {
    const HhlLayout layout{spec.m(), sys.qubits()};
    StateVector state = make_hhl_state(layout);
    const Matrix evolution = evolution_operator(spec);
    const Matrix inverse = evolution.adjoint();
    CircuitBuilder circuit(state, trace);
    circuit.state_prep(sys.rhs());
    circuit.qpe(evolution);
    circuit.inversion(spec.rotation_constant);
    circuit.iqpe(inverse);
    return state;
}

std::vector<double> reduced_distribution(const StateVector &state) {
    const auto layout = HhlLayout::of(state);
    std::vector<double> out(std::size_t{1} << (layout.n + 1), 0.0);
    const auto &amp = state.amplitudes();
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        out[2 * b_index_of(i, layout) + (i & 1U)] += std::norm(amp(static_cast<Eigen::Index>(i)));
    }
    return out;
}

Vector clock_zero_amplitudes(const StateVector &state) {
    const auto layout = HhlLayout::of(state);
    const Eigen::Index outcomes = Eigen::Index{1} << (layout.n + 1);
    Vector out(outcomes);
    for (Eigen::Index idx = 0; idx < outcomes; ++idx) {
        const auto b = static_cast<std::uint64_t>(idx) >> 1;
        const auto a = static_cast<std::uint64_t>(idx) & 1U;
        out(idx) = state.amplitudes()(static_cast<Eigen::Index>((b << (1 + layout.m)) | a));
    }
    return out;
}

double clock_leakage(const StateVector &state) {
    const auto layout = HhlLayout::of(state);
    double total = 0.0;
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        if (clock_index_of(i, layout) != 0) {
            total += std::norm(state.amplitudes()(static_cast<Eigen::Index>(i)));
        }
    }
    return total;
}

ShotHistogram measure_all(const StateVector &state, std::uint64_t shots, std::uint64_t seed) {
    const auto layout = HhlLayout::of(state);
    const double leak = clock_leakage(state);
    if (leak > 1e-6) {
        std::clog << "warning: " << leak << " of the probability mass is on nonzero clock values; "
                  << "marginalizing the clock register\n";
    }
    std::vector<double> probs(state.size());
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        probs[i] = std::norm(state.amplitudes()(static_cast<Eigen::Index>(i)));
    }
    auto counts = sample_counts(probs, shots, seed);
    ShotHistogram hist = empty_histogram(layout.n);
    for (std::uint64_t i = 0; i < counts.size(); ++i) {
        if (counts[i] != 0) {
            hist.counts[outcome_label(2 * b_index_of(i, layout) + (i & 1U), layout.n)] += counts[i];
        }
    }
    hist.shots = shots;
    return hist;
}

}  // namespace hhl
