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

#include "hhl/emulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hhl/error.hpp"

namespace hhl {

std::vector<double> EmulatedState::probabilities() const {
    std::vector<double> p(static_cast<std::size_t>(amplitudes.size()));
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
        p[static_cast<std::size_t>(i)] = std::norm(amplitudes(i));
    }
    return p;
}

double EmulatedState::success_probability() const {
    double total = 0.0;
    for (Eigen::Index i = 1; i < amplitudes.size(); i += 2) {
        total += std::norm(amplitudes(i));
    }
    return total;
}

EmulatedState prepare_emulated_state(const HermitianSystem &sys, const SpectralData &spec, bool round_eigs) {
    const auto dim = static_cast<Eigen::Index>(sys.dim());
    if (spec.eigenvectors.rows() != dim || spec.coefficients.size() != dim ||
        spec.clock.scaled.size() != sys.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "spectral data does not belong to this system");
    }

    std::vector<double> lambda(sys.dim());
    double c = spec.rotation_constant;
    if (spec.clock.exact || round_eigs) {
        for (std::size_t j = 0; j < lambda.size(); ++j) {
            lambda[j] = static_cast<double>(spec.clock.scaled[j]);
        }
    } else {
        lambda = spec.clock.scaled_real;
        c = *std::min_element(lambda.begin(), lambda.end());
    }

    EmulatedState state;
    state.b_qubits = sys.qubits();
    state.amplitudes = Vector::Zero(2 * dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        double ratio = c / lambda[static_cast<std::size_t>(j)];
        if (ratio > 1.0 + 1e-12) {
            std::ostringstream msg;
            msg << "C = " << c << " exceeds scaled eigenvalue " << lambda[static_cast<std::size_t>(j)];
            throw Error(ErrorCode::RotationDomain, msg.str());
        }
        ratio = std::min(ratio, 1.0);
        const double keep = std::sqrt(1.0 - ratio * ratio);
        const Complex beta = spec.coefficients(j);
        for (Eigen::Index i = 0; i < dim; ++i) {
            const Complex weight = beta * spec.eigenvectors(i, j);
            state.amplitudes(2 * i) += weight * keep;
            state.amplitudes(2 * i + 1) += weight * ratio;
        }
    }
    return state;
}

std::vector<double> postselect_ancilla(const EmulatedState &state) {
    double success = state.success_probability();
    if (!(success > 0.0)) {
        throw Error(ErrorCode::ZeroSuccessProbability, "ancilla is never measured in |1>");
    }
    const auto dim = static_cast<std::size_t>(state.amplitudes.size() / 2);
    std::vector<double> out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        out[i] = std::norm(state.amplitudes(static_cast<Eigen::Index>(2 * i + 1))) / success;
    }
    return out;
}

ShotHistogram sample(const EmulatedState &state, std::uint64_t shots, std::uint64_t seed) {
    auto probs = state.probabilities();
    return sample_histogram(probs, state.b_qubits, shots, seed);
}

Vector classical_solution(const HermitianSystem &sys) {
    const auto dim = static_cast<Eigen::Index>(sys.dim());
    Matrix a = sys.matrix();
    Vector x = sys.rhs();
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    for (Eigen::Index col = 0; col < dim; ++col) {
        Eigen::Index pivot = col;
        for (Eigen::Index r = col + 1; r < dim; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) {
                pivot = r;
            }
        }
        if (std::abs(a(pivot, col)) <= kSingularThreshold * scale) {
            throw Error(ErrorCode::Singular, "zero pivot in column " + std::to_string(col));
        }
        if (pivot != col) {
            a.row(pivot).swap(a.row(col));
            std::swap(x(pivot), x(col));
        }
        for (Eigen::Index r = col + 1; r < dim; ++r) {
            const Complex f = a(r, col) / a(col, col);
            for (Eigen::Index k = col; k < dim; ++k) {
                a(r, k) -= f * a(col, k);
            }
            x(r) -= f * x(col);
        }
    }
    for (Eigen::Index r = dim - 1; r >= 0; --r) {
        Complex acc = x(r);
        for (Eigen::Index k = r + 1; k < dim; ++k) {
            acc -= a(r, k) * x(k);
        }
        x(r) = acc / a(r, r);
    }
    return x;
}

std::vector<double> solution_distribution(const Vector &x) {
    double total = x.squaredNorm();
    if (!(total > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "zero solution vector");
    }
    std::vector<double> out(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        out[static_cast<std::size_t>(i)] = std::norm(x(i)) / total;
    }
    return out;
}

}  // namespace hhl
