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

// Shared fixtures for the test binaries. Nothing here calls into the library
// beyond validate_system(), so the helpers can serve as oracles.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hhl/error.hpp"
#include "hhl/linsys.hpp"
#include "hhl/statevec.hpp"

/// Expects `stmt` to throw hhl::Error carrying `expected_code`.
#define EXPECT_HHL_ERROR(stmt, expected_code)                                  \
    do {                                                                       \
        try {                                                                  \
            stmt;                                                              \
            ADD_FAILURE() << "no exception from " #stmt;                       \
        } catch (const ::hhl::Error &e) {                                      \
            EXPECT_EQ(e.code(), expected_code) << e.what();                    \
        }                                                                      \
    } while (0)

namespace hhl::testing {

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

inline Vector vec2(Complex a, Complex b) {
    Vector v(2);
    v << a, b;
    return v;
}

/// [[1, -1/3], [-1/3, 1]], b = (0, 1).
inline HermitianSystem exp1_system() {
    return validate_system(mat2(1.0, -1.0 / 3.0, -1.0 / 3.0, 1.0), vec2(0.0, 1.0));
}

/// [[13/2, -1/2], [-1/2, 13/2]], b = (0, 1).
inline HermitianSystem exp2_system() {
    return validate_system(mat2(6.5, -0.5, -0.5, 6.5), vec2(0.0, 1.0));
}


inline Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    Matrix m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            m(r, c) = Complex(normal(rng), normal(rng));
        }
    }
    return m;
}

/// Haar-ish random unitary: Q of a complex Gaussian matrix with the R phases
/// divided out.
inline Matrix random_unitary(Eigen::Index dim, std::mt19937_64 &rng) {
    const Matrix g = random_gaussian(dim, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) {
            q.col(j) *= r(j, j) / mag;
        }
    }
    return q;
}

inline Vector random_unit_vector(Eigen::Index dim, std::mt19937_64 &rng) {
    Vector v = random_gaussian(dim, 1, rng).col(0);
    return v / v.norm();
}

/// A = U diag(scale * ratios) U^dagger with a random U and a random b.
inline HermitianSystem system_with_ratios(const std::vector<int> &ratios, double scale, std::mt19937_64 &rng) {
    const auto dim = static_cast<Eigen::Index>(ratios.size());
    const Matrix u = random_unitary(dim, rng);
    Eigen::VectorXd lam(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        lam(j) = scale * ratios[static_cast<std::size_t>(j)];
    }
    Matrix a = u * lam.cast<Complex>().asDiagonal() * u.adjoint();
    a = 0.5 * (a + a.adjoint()).eval();
    return validate_system(a, random_unit_vector(dim, rng));
}

/// Random positive integer ratios for an N x N system, at most `max_ratio`.
inline std::vector<int> random_ratios(std::size_t dim, int max_ratio, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> pick(1, max_ratio);
    std::vector<int> out(dim);
    for (auto &r : out) {
        r = pick(rng);
    }
    return out;
}

/// The full 2^q x 2^q matrix of a gate, built one basis column at a time by
/// reading target and control bits directly off the column index.
inline Matrix dense_gate_matrix(const GateOp &gate, int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    Matrix full = Matrix::Zero(dim, dim);
    const auto k = gate.targets.size();
    for (Eigen::Index col = 0; col < dim; ++col) {
        bool active = true;
        for (const auto &c : gate.controls) {
            if (((col >> c.qubit) & 1) != (c.value ? 1 : 0)) {
                active = false;
            }
        }
        if (!active) {
            full(col, col) = 1.0;
            continue;
        }
        Eigen::Index local_in = 0;
        Eigen::Index rest = col;
        for (std::size_t t = 0; t < k; ++t) {
            local_in |= ((col >> gate.targets[t]) & 1) << t;
            rest &= ~(Eigen::Index{1} << gate.targets[t]);
        }
        for (Eigen::Index local_out = 0; local_out < (Eigen::Index{1} << k); ++local_out) {
            Eigen::Index row = rest;
            for (std::size_t t = 0; t < k; ++t) {
                row |= ((local_out >> t) & 1) << gate.targets[t];
            }
            full(row, col) += gate.payload(local_out, local_in);
        }
    }
    return full;
}

inline double max_abs_diff(const Vector &a, const Vector &b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace hhl::testing
