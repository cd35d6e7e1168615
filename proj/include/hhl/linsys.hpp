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

// Problem instances for the HHL pipeline and the spectral quantities that both
// backends (gate-level simulator and eigenbasis emulator) consume.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace hhl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitNormTolerance = 1e-12;
inline constexpr double kSingularThreshold = 1e-12;
inline constexpr double kRatioTolerance = 1e-9;
inline constexpr std::int64_t kRatioDenominatorCap = 4096;
inline constexpr int kMaxClockQubits = 62;

/// A validated linear system A|x> = |b> with A Hermitian, N = 2^n and b a unit
/// vector. Instances can only be obtained from validate_system().
class HermitianSystem {
public:
    const Matrix &matrix() const { return matrix_; }
    const Vector &rhs() const { return rhs_; }
    /// N, the dimension of A.
    std::size_t dim() const { return static_cast<std::size_t>(rhs_.size()); }
    /// n = log2(N), the width of the b register.
    int qubits() const { return qubits_; }
    /// Nonzeros per row; metadata only.
    std::size_t sparsity() const { return sparsity_; }

private:
    friend HermitianSystem validate_system(const Matrix &a, const Vector &b);

    HermitianSystem(Matrix a, Vector b, int qubits, std::size_t sparsity)
        : matrix_(std::move(a)), rhs_(std::move(b)), qubits_(qubits), sparsity_(sparsity) {}

    Matrix matrix_;
    Vector rhs_;
    int qubits_;
    std::size_t sparsity_;
};

struct Eigendecomposition {
    RealVector values;  // ascending
    Matrix vectors;     // column j pairs with values[j]
};

/// How the spectrum is written into the clock register.
struct ClockPlan {
    /// Clock integers lambda~_j; 1 <= lambda~_j <= 2^m - 1.
    std::vector<std::int64_t> scaled;
    /// lambda_j * t * 2^m / (2 pi) before rounding. Equal to `scaled` when exact.
    std::vector<double> scaled_real;
    int m = 0;
    /// Evolution time so that exp(i A t) carries phase 2 pi lambda~_j / 2^m on u_j.
    double t = 0.0;
    /// True when the integer ratio reproduces the eigenvalue ratio exactly.
    bool exact = false;
};

struct SpectralData {
    RealVector eigenvalues;
    Matrix eigenvectors;
    Vector coefficients;  // beta_j = <u_j|b>
    double kappa = 1.0;
    ClockPlan clock;
    /// C, in clock-integer units.
    double rotation_constant = 1.0;

    int m() const { return clock.m; }
    double t() const { return clock.t; }
};

/// Checks Hermiticity, N = 2^n and |b| = 1. A non-unit b is rejected, never
/// renormalized. Singularity is detected later, by eigendecompose().
HermitianSystem validate_system(const Matrix &a, const Vector &b);

/// Ascending eigenvalues and orthonormal eigenvectors. Each eigenvector is
/// phase-fixed so that its first component with magnitude above 1e-8 is real
/// and positive, which makes the expansion coefficients reproducible.
Eigendecomposition eigendecompose(const HermitianSystem &sys);

Vector expansion_coefficients(const Matrix &eigenvectors, const Vector &b);

/// max|lambda| / min|lambda|.
double condition_number(const RealVector &eigenvalues);

/// Best continued-fraction approximation p/q of `x` with q <= max_denominator
/// and |x - p/q| <= tolerance * max(1, |x|), if one exists.
std::optional<std::pair<std::int64_t, std::int64_t>> rational_approximation(
    double x, std::int64_t max_denominator = kRatioDenominatorCap, double tolerance = kRatioTolerance);

/// Smallest m with 2^m > r_max, i.e. ceil(log2(r_max + 1)).
int clock_qubits_for(std::int64_t r_max);

/// Recovers the reduced integer ratio of a positive spectrum and sizes the
/// clock register for it. With an override m smaller than the exact width (or
/// when no ratio exists under the denominator cap) the plan falls back to
/// rounding with the largest eigenvalue mapped to 2^(m-1).
ClockPlan clock_register_plan(const RealVector &eigenvalues, std::optional<int> m_override = std::nullopt);

/// C = min_j lambda~_j.
double rotation_constant(std::span<const std::int64_t> scaled);

/// Runs eigendecompose, expansion_coefficients, condition_number,
/// clock_register_plan and rotation_constant in sequence.
SpectralData analyze_spectrum(const HermitianSystem &sys, std::optional<int> m_override = std::nullopt);

/// Number of entries above 1e-12 in magnitude in the densest row.
std::size_t row_sparsity(const Matrix &a);

}  // namespace hhl
