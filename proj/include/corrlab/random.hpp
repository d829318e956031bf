// Copyright 2026 The corrlab developers.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "corrlab/algebra.hpp"

namespace corrlab {

/**
 * SplitMix64 stream with an explicit Box–Muller normal sampler. Used instead
 * of <random> distributions so that seeded runs produce bit-identical
 * streams on every platform and standard library (std::normal_distribution
 * is implementation-defined).
 */
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return Complex(re, im);
    }

    /// Derives an independent stream for a labeled sub-task.
    Rng fork(uint64_t label) {
        Rng child(next_u64() ^ (0xa0761d6478bd642fULL * (label + 1)));
        return child;
    }

  private:
    uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Approximately Haar-distributed d×d unitary: QR of a complex Gaussian
/// matrix with the R-diagonal phases absorbed into Q.
inline Matrix random_unitary_matrix(int d, Rng& rng) {
    Matrix g(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) g(r, c) = rng.complex_normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    const auto rdiag = qr.matrixQR().diagonal();
    for (int c = 0; c < d; ++c) {
        const Complex rc = rdiag(c);
        const double mag = std::abs(rc);
        if (mag > 0.0) q.col(c) *= rc / mag;
    }
    return q;
}

/// Random unitary conforming to alg (independent Haar-like block samples).
inline BlockOperator random_unitary(const TracialAlgebra& alg, Rng& rng) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<size_t>(alg.num_blocks()));
    for (int k = 0; k < alg.num_blocks(); ++k) blocks.push_back(random_unitary_matrix(alg.block_dim(k), rng));
    return BlockOperator(std::move(blocks));
}

/// Random symmetry: a ±1 spectrum conjugated by a Haar-like unitary.
inline Matrix random_symmetry_matrix(int d, Rng& rng) {
    const Matrix w = random_unitary_matrix(d, rng);
    Eigen::VectorXcd signs(d);
    for (int j = 0; j < d; ++j) signs(j) = rng.uniform() < 0.5 ? -1.0 : 1.0;
    Matrix s = w * signs.asDiagonal() * w.adjoint();
    return 0.5 * (s + s.adjoint());
}

inline BlockOperator random_symmetry(const TracialAlgebra& alg, Rng& rng) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<size_t>(alg.num_blocks()));
    for (int k = 0; k < alg.num_blocks(); ++k) blocks.push_back(random_symmetry_matrix(alg.block_dim(k), rng));
    return BlockOperator(std::move(blocks));
}

} // namespace corrlab
