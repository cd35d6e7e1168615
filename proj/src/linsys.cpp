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

#include "hhl/linsys.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hhl/error.hpp"

namespace hhl {

namespace {

bool all_finite(const Matrix &a) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (!std::isfinite(a.data()[i].real()) || !std::isfinite(a.data()[i].imag())) {
            return false;
        }
    }
    return true;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b, std::int64_t limit) {
    std::int64_t g = std::gcd(a, b);
    std::int64_t q = a / g;
    if (q > limit / b) {
        return -1;
    }
    return q * b;
}

}  // namespace

std::size_t row_sparsity(const Matrix &a) {
    std::size_t best = 0;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        std::size_t count = 0;
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            if (std::abs(a(r, c)) > 1e-12) {
                ++count;
            }
        }
        best = std::max(best, count);
    }
    return best;
}

HermitianSystem validate_system(const Matrix &a, const Vector &b) {
    if (a.rows() != a.cols()) {
        std::ostringstream msg;
        msg << "matrix is " << a.rows() << "x" << a.cols() << ", expected square";
        throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
    if (b.size() != a.rows()) {
        std::ostringstream msg;
        msg << "rhs has " << b.size() << " entries, matrix has dimension " << a.rows();
        throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
    if (!all_finite(a) || !all_finite(b)) {
        throw Error(ErrorCode::InvalidArgument, "system contains non-finite entries");
    }
    auto dim = static_cast<std::uint64_t>(a.rows());
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw Error(ErrorCode::NotPowerOfTwo, "dimension " + std::to_string(dim) + " is not 2^n with n >= 1");
    }
    double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTolerance) {
        std::ostringstream msg;
        msg << "max |A - A^dagger| = " << asym;
        throw Error(ErrorCode::NotHermitian, msg.str());
    }
    double norm = b.norm();
    if (std::abs(norm - 1.0) > kUnitNormTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "|b| = " << norm;
        throw Error(ErrorCode::NotUnitVector, msg.str());
    }
    int qubits = std::countr_zero(dim);
    return HermitianSystem(a, b, qubits, row_sparsity(a));
}

namespace {

template <typename Solver, typename Input>
Eigendecomposition solve_hermitian(const Input &a) {
    Solver solver(a);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::Singular, "eigendecomposition did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace

Eigendecomposition eigendecompose(const HermitianSystem &sys) {
    // Single-qubit systems take the fixed-size solver, which stays off the heap.
    Eigendecomposition out =
        sys.dim() == 2
            ? solve_hermitian<Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>>(Eigen::Matrix2cd(sys.matrix()))
            : solve_hermitian<Eigen::SelfAdjointEigenSolver<Matrix>>(sys.matrix());
    if (out.values.cwiseAbs().minCoeff() <= kSingularThreshold) {
        throw Error(ErrorCode::Singular, "matrix has an eigenvalue with magnitude <= 1e-12");
    }
    for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) {
        auto col = out.vectors.col(j);
        for (Eigen::Index i = 0; i < col.size(); ++i) {
            double mag = std::abs(col(i));
            if (mag > 1e-8) {
                col *= std::conj(col(i)) / mag;
                col(i) = Complex(col(i).real(), 0.0);
                break;
            }
        }
    }
    return out;
}

Vector expansion_coefficients(const Matrix &eigenvectors, const Vector &b) {
    if (eigenvectors.rows() != b.size() || eigenvectors.cols() != b.size()) {
        throw Error(ErrorCode::DimensionMismatch, "eigenvector matrix and rhs disagree in dimension");
    }
    return eigenvectors.adjoint() * b;
}

double condition_number(const RealVector &eigenvalues) {
    if (eigenvalues.size() == 0) {
        throw Error(ErrorCode::EmptyList, "empty spectrum");
    }
    double lo = eigenvalues.cwiseAbs().minCoeff();
    if (lo <= kSingularThreshold) {
        throw Error(ErrorCode::Singular, "spectrum contains a zero eigenvalue");
    }
    return eigenvalues.cwiseAbs().maxCoeff() / lo;
}

std::optional<std::pair<std::int64_t, std::int64_t>> rational_approximation(
    double x, std::int64_t max_denominator, double tolerance) {
    if (!std::isfinite(x)) {
        return std::nullopt;
    }
    double bound = tolerance * std::max(1.0, std::abs(x));
    // Convergents h_k / k_k of the continued fraction of x.
    std::int64_t h_prev = 1, h = static_cast<std::int64_t>(std::floor(x));
    std::int64_t k_prev = 0, k = 1;
    double rem = x - std::floor(x);
    for (int iter = 0; iter < 64; ++iter) {
        if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= bound) {
            return std::make_pair(h, k);
        }
        if (rem <= 0.0) {
            break;
        }
        double inv = 1.0 / rem;
        double a_real = std::floor(inv);
        if (a_real > 1e15) {
            break;
        }
        auto a = static_cast<std::int64_t>(a_real);
        rem = inv - a_real;
        std::int64_t h_next = a * h + h_prev;
        std::int64_t k_next = a * k + k_prev;
        if (k_next > max_denominator) {
            break;
        }
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    return std::nullopt;
}

int clock_qubits_for(std::int64_t r_max) {
    if (r_max < 1) {
        throw Error(ErrorCode::InvalidArgument, "clock value must be positive");
    }
    int m = 0;
    while (m < 63 && (std::int64_t{1} << m) <= r_max) {
        ++m;
    }
    return m;
}

ClockPlan clock_register_plan(const RealVector &eigenvalues, std::optional<int> m_override) {
    if (eigenvalues.size() == 0) {
        throw Error(ErrorCode::EmptyList, "empty spectrum");
    }
    if (m_override && (*m_override < 1 || *m_override > kMaxClockQubits)) {
        throw Error(ErrorCode::InvalidArgument,
                    "clock override m=" + std::to_string(*m_override) + " outside [1, 62]");
    }
    double lam_min = eigenvalues.minCoeff();
    double lam_max = eigenvalues.maxCoeff();
    if (eigenvalues.cwiseAbs().minCoeff() <= kSingularThreshold) {
        throw Error(ErrorCode::Singular, "spectrum contains a zero eigenvalue");
    }
    if (lam_min < 0.0) {
        throw Error(ErrorCode::IndefiniteSpectrum,
                    "negative eigenvalues cannot be encoded in an unsigned clock register");
    }
    const auto size = static_cast<std::size_t>(eigenvalues.size());

    // Ratios against lambda_min, each as p_j / q_j, then brought to a common
    // denominator and reduced. `ratio` holds p_j until the rescale.
    std::vector<std::int64_t> ratio(size), den(size);
    bool found = true;
    std::int64_t common = 1;
    constexpr std::int64_t kLimit = std::int64_t{1} << 40;
    for (std::size_t j = 0; j < size && found; ++j) {
        auto approx = rational_approximation(eigenvalues[static_cast<Eigen::Index>(j)] / lam_min);
        if (!approx) {
            found = false;
            break;
        }
        ratio[j] = approx->first;
        den[j] = approx->second;
        common = checked_lcm(common, den[j], kLimit);
        if (common < 0) {
            found = false;
        }
    }
    if (found) {
        std::int64_t g = 0;
        for (std::size_t j = 0; j < size; ++j) {
            std::int64_t scale = common / den[j];
            if (ratio[j] > kLimit / scale) {
                found = false;
                break;
            }
            ratio[j] *= scale;
            g = std::gcd(g, ratio[j]);
        }
        if (found) {
            for (auto &r : ratio) {
                r /= g;
            }
        }
    }

    ClockPlan plan;
    if (found) {
        std::int64_t r_max = *std::max_element(ratio.begin(), ratio.end());
        int m_exact = clock_qubits_for(r_max);
        if (!m_override || *m_override >= m_exact) {
            plan.exact = true;
            plan.m = m_override.value_or(m_exact);
            plan.scaled_real.assign(ratio.begin(), ratio.end());
            plan.scaled = std::move(ratio);
            plan.t = 2.0 * std::numbers::pi * static_cast<double>(r_max) /
                     (std::ldexp(1.0, plan.m) * lam_max);
            return plan;
        }
    }
    if (!m_override) {
        throw Error(ErrorCode::InexactRatioNoOverride,
                    "no integer eigenvalue ratio with denominator <= 4096; pass an explicit clock size");
    }
    plan.exact = false;
    plan.m = *m_override;
    plan.t = std::numbers::pi / lam_max;
    double top = std::ldexp(1.0, plan.m - 1);
    plan.scaled.resize(size);
    plan.scaled_real.resize(size);
    for (std::size_t j = 0; j < size; ++j) {
        double v = eigenvalues[static_cast<Eigen::Index>(j)] / lam_max * top;
        plan.scaled_real[j] = v;
        // Values that round to zero would be invisible to the clock; keep them
        // at the smallest nonzero register value.
        plan.scaled[j] = std::max<std::int64_t>(1, std::llround(v));
    }
    return plan;
}

double rotation_constant(std::span<const std::int64_t> scaled) {
    if (scaled.empty()) {
        throw Error(ErrorCode::EmptyList, "no scaled eigenvalues");
    }
    auto lo = *std::min_element(scaled.begin(), scaled.end());
    if (lo < 1) {
        throw Error(ErrorCode::RotationDomain, "scaled eigenvalues must be positive");
    }
    return static_cast<double>(lo);
}

SpectralData analyze_spectrum(const HermitianSystem &sys, std::optional<int> m_override) {
    auto eig = eigendecompose(sys);
    SpectralData out;
    out.coefficients = expansion_coefficients(eig.vectors, sys.rhs());
    out.kappa = condition_number(eig.values);
    out.clock = clock_register_plan(eig.values, m_override);
    out.rotation_constant = rotation_constant(out.clock.scaled);
    out.eigenvalues = std::move(eig.values);
    out.eigenvectors = std::move(eig.vectors);
    return out;
}

}  // namespace hhl
