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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hhl/emulator.hpp"
#include "test_util.hpp"

namespace hhl {
namespace {

// Index of (ancilla, clock, b) under the a | c | b layout.
std::uint64_t index_of(const HhlLayout &l, std::uint64_t a, std::uint64_t clock, std::uint64_t b) {
    return a | (clock << 1) | (b << (1 + l.m));
}

std::vector<double> clock_marginal(const StateVector &s, const HhlLayout &l) {
    std::vector<double> out(std::size_t{1} << l.m, 0.0);
    for (std::uint64_t i = 0; i < s.size(); ++i) {
        out[(i >> 1) & ((std::uint64_t{1} << l.m) - 1)] += std::norm(s.amplitudes()(static_cast<Eigen::Index>(i)));
    }
    return out;
}

// Clock register of a state with ancilla and b register in |0>.
Vector clock_slice(const StateVector &s, const HhlLayout &l) {
    Vector out(Eigen::Index{1} << l.m);
    for (Eigen::Index k = 0; k < out.size(); ++k) {
        out(k) = s.amplitudes()(static_cast<Eigen::Index>(index_of(l, 0, static_cast<std::uint64_t>(k), 0)));
    }
    return out;
}

void load_clock(StateVector &s, const HhlLayout &l, const Vector &clock) {
    s.amplitudes().setZero();
    for (Eigen::Index k = 0; k < clock.size(); ++k) {
        s.amplitudes()(static_cast<Eigen::Index>(index_of(l, 0, static_cast<std::uint64_t>(k), 0))) = clock(k);
    }
}

// F[k, x] = e^{2 pi i k x / M} / sqrt(M).
Matrix dft(Eigen::Index dim) {
    Matrix f(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        for (Eigen::Index x = 0; x < dim; ++x) {
            f(k, x) = std::polar(1.0 / std::sqrt(static_cast<double>(dim)),
                                 2.0 * std::numbers::pi * static_cast<double>(k * x) / static_cast<double>(dim));
        }
    }
    return f;
}

// Smallest max-abs difference over a global phase fixed on the largest entry.
double phase_aligned_diff(const Vector &a, const Vector &b) {
    Eigen::Index pivot = 0;
    b.cwiseAbs().maxCoeff(&pivot);
    const Complex rot = a(pivot) / b(pivot);
    return (a - b * (rot / std::abs(rot))).cwiseAbs().maxCoeff();
}

double tvd(const std::vector<double> &p, const std::vector<double> &q) {
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        total += std::abs(p[i] - q[i]);
    }
    return 0.5 * total;
}

TEST(HhlLayout, QubitAssignment) {
    const HhlLayout l{3, 2};
    EXPECT_EQ(l.ancilla(), 0);
    EXPECT_EQ(l.clock(0), 1);
    EXPECT_EQ(l.clock(2), 3);
    EXPECT_EQ(l.b(0), 4);
    EXPECT_EQ(l.total(), 6);
    EXPECT_EQ(l.clock_qubits(), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(l.b_qubits(), (std::vector<int>{4, 5}));
    const auto back = HhlLayout::of(make_hhl_state(l));
    EXPECT_EQ(back.m, 3);
    EXPECT_EQ(back.n, 2);
}

TEST(StatePrep, LoadsRhs) {
    const HhlLayout l{2, 1};
    {
        StateVector s = make_hhl_state(l);
        state_prep_b(s, testing::vec2(0.0, 1.0));
        EXPECT_NEAR(std::abs(s.amplitudes()(static_cast<Eigen::Index>(index_of(l, 0, 0, 1)))), 1.0, 1e-15);
    }
    {
        StateVector s = make_hhl_state(l);
        state_prep_b(s, testing::vec2(1.0, 0.0));
        EXPECT_NEAR(std::abs(s.amplitudes()(0) - Complex(1.0, 0.0)), 0.0, 1e-15);
    }
    {
        // Same action as a Hadamard on |0>.
        const double r = std::numbers::sqrt2 / 2;
        StateVector s = make_hhl_state(l);
        state_prep_b(s, testing::vec2(r, r));
        StateVector h = make_hhl_state(l);
        apply_gate(h, gates::hadamard(l.b(0)));
        EXPECT_LT(testing::max_abs_diff(s.amplitudes(), h.amplitudes()), 1e-15);
    }
}

TEST(StatePrep, RandomComplexRhsExactly) {
    std::mt19937_64 rng(51);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const HhlLayout l{1, n};
            const Vector b = testing::random_unit_vector(Eigen::Index{1} << n, rng);
            StateVector s = make_hhl_state(l);
            state_prep_b(s, b);
            for (Eigen::Index i = 0; i < b.size(); ++i) {
                const auto idx = static_cast<Eigen::Index>(index_of(l, 0, 0, static_cast<std::uint64_t>(i)));
                EXPECT_NEAR(std::abs(s.amplitudes()(idx) - b(i)), 0.0, 1e-14);
            }
        }
    }
}

TEST(StatePrep, RejectsBadRhs) {
    StateVector s = make_hhl_state({2, 1});
    EXPECT_HHL_ERROR(state_prep_b(s, Vector::Unit(4, 0)), ErrorCode::DimensionMismatch);
    EXPECT_HHL_ERROR(state_prep_b(s, testing::vec2(1.0, 1.0)), ErrorCode::NotUnitVector);
}

TEST(EvolutionOperator, IsUnitaryAndDiagonalInEigenbasis) {
    const auto sys = testing::exp1_system();
    const auto spec = analyze_spectrum(sys);
    const Matrix u = evolution_operator(spec);
    EXPECT_LT((u.adjoint() * u - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-14);
    for (Eigen::Index j = 0; j < 2; ++j) {
        const Vector uj = spec.eigenvectors.col(j);
        const Complex expected = std::polar(1.0, spec.eigenvalues(j) * spec.t());
        EXPECT_LT(((u * uj) - expected * uj).cwiseAbs().maxCoeff(), 1e-14);
    }
}

// Eigenphase kickback: e^{2 pi i lambda~_j power / 2^m} on u_j, computed directly.
TEST(ControlledEvolution, EigenphaseOnEigenvectors) {
    for (const auto &sys : {testing::exp1_system(), testing::exp2_system()}) {
        const auto spec = analyze_spectrum(sys);
        const HhlLayout l{spec.m(), 1};
        const Matrix u = evolution_operator(spec);
        for (Eigen::Index j = 0; j < 2; ++j) {
            for (std::uint64_t power : {1u, 2u, 3u, 4u, 8u}) {
                StateVector s = make_hhl_state(l);
                state_prep_b(s, spec.eigenvectors.col(j));
                apply_gate(s, gates::pauli_x(l.clock(0)));
                const Vector before = s.amplitudes();
                controlled_evolution(s, u, power, l.clock(0));
                const double angle = 2.0 * std::numbers::pi * static_cast<double>(spec.clock.scaled[j]) *
                                     static_cast<double>(power) / std::ldexp(1.0, l.m);
                EXPECT_LT(testing::max_abs_diff(s.amplitudes(), std::polar(1.0, angle) * before), 1e-12);
            }
        }
    }
}

TEST(ControlledEvolution, FullTurnAndInactiveControlAreIdentity) {
    const auto spec = analyze_spectrum(testing::exp1_system());
    const HhlLayout l{2, 1};
    const Matrix u = evolution_operator(spec);
    StateVector s = make_hhl_state(l);
    state_prep_b(s, spec.eigenvectors.col(0));
    const Vector before = s.amplitudes();
    // Control qubit in |0>.
    controlled_evolution(s, u, 3, l.clock(1));
    EXPECT_LT(testing::max_abs_diff(s.amplitudes(), before), 1e-15);
    // lambda~ = 1, power 4, m = 2: a full turn.
    apply_gate(s, gates::pauli_x(l.clock(1)));
    const Vector flipped = s.amplitudes();
    controlled_evolution(s, u, 4, l.clock(1));
    EXPECT_LT(testing::max_abs_diff(s.amplitudes(), flipped), 1e-12);
    EXPECT_HHL_ERROR(controlled_evolution(s, u, 1, l.b(0)), ErrorCode::IndexOutOfRange);
}

TEST(Iqft, SingleQubitIsHadamard) {
    const HhlLayout l{1, 1};
    StateVector s = make_hhl_state(l);
    GateTrace trace;
    iqft(s, &trace);
    ASSERT_EQ(trace.lines().size(), 1u);
    EXPECT_EQ(trace.lines()[0], "0 h t=1");
}

TEST(Iqft, UniformSuperpositionToZero) {
    for (int m = 1; m <= 5; ++m) {
        const HhlLayout l{m, 1};
        StateVector s = make_hhl_state(l);
        for (int k = 0; k < m; ++k) {
            apply_gate(s, gates::hadamard(l.clock(k)));
        }
        iqft(s);
        EXPECT_NEAR(std::abs(s.amplitudes()(0)), 1.0, 1e-12);
    }
}

TEST(Iqft, FourierBasisStateToFrequency) {
    for (int m = 1; m <= 4; ++m) {
        const HhlLayout l{m, 1};
        const Matrix f = dft(Eigen::Index{1} << m);
        for (Eigen::Index k = 0; k < f.rows(); ++k) {
            StateVector s = make_hhl_state(l);
            load_clock(s, l, f.col(k));
            iqft(s);
            EXPECT_NEAR(std::abs(clock_slice(s, l)(k)), 1.0, 1e-12);
        }
    }
}

// Both transforms against the dense DFT matrix on random clock states.
TEST(Qft, MatchesDenseDftOracle) {
    std::mt19937_64 rng(52);
    for (int m = 1; m <= 4; ++m) {
        const HhlLayout l{m, 1};
        const Matrix f = dft(Eigen::Index{1} << m);
        for (int trial = 0; trial < 5; ++trial) {
            const Vector v = testing::random_unit_vector(f.rows(), rng);
            StateVector s = make_hhl_state(l);
            load_clock(s, l, v);
            qft(s);
            EXPECT_LT(testing::max_abs_diff(clock_slice(s, l), f * v), 1e-12);
            load_clock(s, l, v);
            iqft(s);
            EXPECT_LT(testing::max_abs_diff(clock_slice(s, l), f.adjoint() * v), 1e-12);
        }
    }
}

TEST(Qpe, ExperimentOneEigenvectorReadsOne) {
    const auto spec = analyze_spectrum(testing::exp1_system());
    const HhlLayout l{spec.m(), 1};
    StateVector s = make_hhl_state(l);
    state_prep_b(s, spec.eigenvectors.col(0));
    qpe(s, evolution_operator(spec));
    EXPECT_NEAR(clock_marginal(s, l)[1], 1.0, 1e-12);
}

TEST(Qpe, ExperimentTwoEigenvectorReadsSeven) {
    const auto spec = analyze_spectrum(testing::exp2_system());
    const HhlLayout l{spec.m(), 1};
    StateVector s = make_hhl_state(l);
    state_prep_b(s, spec.eigenvectors.col(1));
    qpe(s, evolution_operator(spec));
    EXPECT_NEAR(clock_marginal(s, l)[7], 1.0, 1e-12);
}

// Eigenphase oracle for random exact spectra: each eigenvector lands on its
// clock integer.
TEST(Qpe, RandomExactSpectraLandOnClockIntegers) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 15; ++trial) {
        const auto sys = testing::system_with_ratios(testing::random_ratios(4, 7, rng), 0.8, rng);
        const auto spec = analyze_spectrum(sys);
        const HhlLayout l{spec.m(), 2};
        const Matrix u = evolution_operator(spec);
        for (Eigen::Index j = 0; j < 4; ++j) {
            StateVector s = make_hhl_state(l);
            state_prep_b(s, spec.eigenvectors.col(j));
            qpe(s, u);
            EXPECT_NEAR(clock_marginal(s, l)[static_cast<std::size_t>(spec.clock.scaled[static_cast<std::size_t>(j)])], 1.0,
                        1e-10);
        }
    }
}

TEST(Iqpe, UndoesQpeOnRandomStates) {
    std::mt19937_64 rng(54);
    const auto spec = analyze_spectrum(testing::exp2_system());
    const HhlLayout l{spec.m(), 1};
    const Matrix u = evolution_operator(spec);
    for (int trial = 0; trial < 5; ++trial) {
        StateVector s = make_hhl_state(l);
        s.amplitudes() = testing::random_unit_vector(static_cast<Eigen::Index>(s.size()), rng);
        const Vector before = s.amplitudes();
        qpe(s, u);
        iqpe(s, u);
        EXPECT_LT(testing::max_abs_diff(s.amplitudes(), before), 1e-10);
    }
}

TEST(EigenvalueInversion, ClosedFormAngles) {
    const HhlLayout l{2, 1};
    {
        // Clock |1>, C = 1: full flip.
        StateVector s = make_hhl_state(l);
        apply_gate(s, gates::pauli_x(l.clock(0)));
        eigenvalue_inversion(s, 1.0);
        EXPECT_NEAR(std::abs(s.amplitudes()(static_cast<Eigen::Index>(index_of(l, 1, 1, 0)))), 1.0, 1e-15);
    }
    {
        // Clock |2>, C = 1: amplitude 1/2 on |1>, sqrt3/2 on |0>.
        StateVector s = make_hhl_state(l);
        apply_gate(s, gates::pauli_x(l.clock(1)));
        eigenvalue_inversion(s, 1.0);
        EXPECT_NEAR(s.amplitudes()(static_cast<Eigen::Index>(index_of(l, 1, 2, 0))).real(), 0.5, 1e-15);
        EXPECT_NEAR(s.amplitudes()(static_cast<Eigen::Index>(index_of(l, 0, 2, 0))).real(), std::sqrt(3.0) / 2, 1e-15);
    }
    {
        // Clock |0>: untouched.
        StateVector s = make_hhl_state(l);
        eigenvalue_inversion(s, 1.0);
        EXPECT_EQ(s.amplitudes()(0), Complex(1.0, 0.0));
    }
    {
        // Clock values below C saturate.
        StateVector s = make_hhl_state(l);
        apply_gate(s, gates::pauli_x(l.clock(0)));
        eigenvalue_inversion(s, 3.0);
        EXPECT_NEAR(std::abs(s.amplitudes()(static_cast<Eigen::Index>(index_of(l, 1, 1, 0)))), 1.0, 1e-15);
    }
}

TEST(EigenvalueInversion, EveryClockValue) {
    const HhlLayout l{4, 1};
    const double c = 5.0;
    for (std::uint64_t k = 1; k < 16; ++k) {
        StateVector s = make_hhl_state(l);
        s.amplitudes()(0) = 0.0;
        s.amplitudes()(static_cast<Eigen::Index>(index_of(l, 0, k, 0))) = 1.0;
        eigenvalue_inversion(s, c);
        const double expected = std::min(1.0, c / static_cast<double>(k));
        EXPECT_NEAR(s.amplitudes()(static_cast<Eigen::Index>(index_of(l, 1, k, 0))).real(), expected, 1e-14);
    }
}

TEST(EigenvalueInversion, RotationDomain) {
    StateVector s = make_hhl_state({2, 1});
    EXPECT_HHL_ERROR(eigenvalue_inversion(s, 0.0), ErrorCode::RotationDomain);
    EXPECT_HHL_ERROR(eigenvalue_inversion(s, 4.0), ErrorCode::RotationDomain);
}

TEST(RunHhlCircuit, ExperimentOneMatchesEmulatorAmplitudes) {
    for (const auto &sys : {testing::exp1_system(), testing::exp2_system()}) {
        const auto spec = analyze_spectrum(sys);
        const auto state = run_hhl_circuit(sys, spec);
        const auto em = prepare_emulated_state(sys, spec);
        EXPECT_LT(phase_aligned_diff(clock_zero_amplitudes(state), em.amplitudes), 1e-10);
        EXPECT_LT(clock_leakage(state), 1e-10);
    }
}

TEST(RunHhlCircuit, IdentityEndsInSingleBasisState) {
    const auto sys = validate_system(Matrix::Identity(2, 2), testing::vec2(1.0, 0.0));
    const auto spec = analyze_spectrum(sys);
    const auto state = run_hhl_circuit(sys, spec);
    EXPECT_NEAR(std::abs(state.amplitudes()(1)), 1.0, 1e-12);
}

TEST(RunHhlCircuit, GateCountForExperimentOne) {
    const auto sys = testing::exp1_system();
    GateTrace trace;
    run_hhl_circuit(sys, analyze_spectrum(sys), &trace);
    // prep 1, H 2, evolutions 1 + 2, IQFT 4, rotations 3, then the mirror.
    EXPECT_EQ(trace.lines().size(), 22u);
    EXPECT_EQ(trace.lines().front().substr(0, 8), "0 prep_b");
    EXPECT_NE(trace.str().find("ccry t=0 c=1:1,2:0"), std::string::npos);
}

// Backends agree at distribution level on random exact systems, any size.
TEST(RunHhlCircuit, RandomExactSystemsMatchEmulator) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t dim = std::size_t{1} << (1 + trial % 3);
        const auto sys = testing::system_with_ratios(testing::random_ratios(dim, 7, rng), 1.7, rng);
        const auto spec = analyze_spectrum(sys);
        const auto state = run_hhl_circuit(sys, spec);
        EXPECT_LT(tvd(reduced_distribution(state), prepare_emulated_state(sys, spec).probabilities()), 1e-8);
        EXPECT_LT(clock_leakage(state), 1e-10);
        EXPECT_NEAR(state.norm(), 1.0, 1e-12);
    }
}

TEST(RunHhlCircuit, NarrowClockLeaks) {
    const auto sys = testing::exp2_system();
    const auto spec = analyze_spectrum(sys, 2);
    const auto state = run_hhl_circuit(sys, spec);
    EXPECT_GT(clock_leakage(state), 1e-6);
    ::testing::internal::CaptureStderr();
    measure_all(state, 16, 1);
    EXPECT_NE(::testing::internal::GetCapturedStderr().find("warning"), std::string::npos);
}

TEST(MeasureAll, DeterministicAndSeeded) {
    const auto sys = validate_system(Matrix::Identity(2, 2), testing::vec2(1.0, 0.0));
    const auto state = run_hhl_circuit(sys, analyze_spectrum(sys));
    EXPECT_EQ(measure_all(state, 300, 4).count("01"), 300u);
    const auto state1 = run_hhl_circuit(testing::exp1_system(), analyze_spectrum(testing::exp1_system()));
    EXPECT_EQ(measure_all(state1, 2048, 4).counts, measure_all(state1, 2048, 4).counts);
}

TEST(MeasureAll, ExperimentOneHistogramShape) {
    const auto sys = testing::exp1_system();
    const auto state = run_hhl_circuit(sys, analyze_spectrum(sys));
    const auto h = measure_all(state, 2048, 17);
    EXPECT_EQ(h.shots, 2048u);
    // P(11) : P(01) = 9 : 1 in expectation, and the ancilla fails sometimes.
    const double ratio = static_cast<double>(h.count("11")) / static_cast<double>(h.count("01"));
    EXPECT_GT(ratio, 6.0);
    EXPECT_LT(ratio, 13.0);
    EXPECT_GT(h.count("00") + h.count("10"), 0u);
}

}  // namespace
}  // namespace hhl
