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
#include "corrlab/witness.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <tuple>

namespace corrlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_clock_params(int d, int m, const char* who) {
    if (d < 2) throw conformance_error(std::string(who) + ": dimension must be >= 2");
    if (m < 0 || m >= d) throw conformance_error(std::string(who) + ": phase index must lie in [0, d)");
}

Complex unit_phase(double angle) { return Complex(std::cos(angle), std::sin(angle)); }

} // namespace

ClockFlip build_clock_flip(int d, int m) {
    require_clock_params(d, m, "build_clock_flip");
    Matrix D = Matrix::Zero(d, d);
    Matrix J = Matrix::Zero(d, d);
    Matrix K = Matrix::Zero(d, d);
    const int a = d - m; // K's index map is j ↦ a−j (mod d)
    for (int j = 0; j < d; ++j) {
        D(j, j) = unit_phase(kTwoPi * j / d);
        J(((d - j) % d), j) = 1.0;
        K((((a - j) % d) + d) % d, j) = 1.0;
    }
    return ClockFlip{std::move(D), std::move(J), std::move(K)};
}

double SymmetryQuadruple::theta() const { return std::numbers::pi * m / d; }

SymmetryQuadruple build_symmetries(int d, int m) {
    require_clock_params(d, m, "build_symmetries");
    ClockFlip cf = build_clock_flip(d, m);
    const double theta = std::numbers::pi * m / d;
    const Complex phase = unit_phase(theta);

    // S1 = e^{iθ}·D·K and S3 = D*·J, assembled entrywise so the generalized
    // permutation structure stays exact: (D·K) e_j = ω^{k(j)} e_{k(j)}.
    Matrix S1 = Matrix::Zero(d, d);
    Matrix S3 = Matrix::Zero(d, d);
    const int a = d - m;
    for (int j = 0; j < d; ++j) {
        const int kj = (((a - j) % d) + d) % d;
        const int jj = (d - j) % d;
        S1(kj, j) = phase * unit_phase(kTwoPi * kj / d);
        S3(jj, j) = unit_phase(-kTwoPi * jj / d);
    }
    return SymmetryQuadruple{d, m, BlockOperator::from_matrix(std::move(S1)), BlockOperator::from_matrix(cf.K),
                             BlockOperator::from_matrix(std::move(S3)), BlockOperator::from_matrix(cf.J)};
}

int choose_parameters(double kappa, int d) {
    if (d < 2) throw conformance_error("choose_parameters: dimension must be >= 2");
    const double target = kTwoPi * kappa;
    int best = -1;
    double best_dist = 0.0;
    for (int m = 0; m < d; ++m) {
        if (std::gcd(m, d) != 1) continue;
        const double theta = std::numbers::pi * m / d;
        const double dist = std::abs(std::remainder(theta - target, kTwoPi));
        if (best < 0 || dist < best_dist) {
            best = m;
            best_dist = dist;
        }
    }
    if (best < 0) throw validation_error("choose_parameters: no coprime phase index exists"); // unreachable for d >= 2
    return best;
}

UnitaryTuple build_witness_tuple(int d, int m, int n) {
    if (n < 8) throw conformance_error("build_witness_tuple: tuple length must be >= 8");
    require_clock_params(d, m, "build_witness_tuple");
    const SymmetryQuadruple q = build_symmetries(d, m);
    const TracialAlgebra alg = TracialAlgebra::single_block(d);
    const BlockOperator I = BlockOperator::identity(alg);
    const Complex i(0.0, 1.0);
    const double s = 1.0 / std::numbers::sqrt2;

    const BlockOperator U3 = q.S1 * q.S2;
    const BlockOperator U4 = U3 * q.S3;
    std::vector<BlockOperator> u;
    u.reserve(static_cast<size_t>(n));
    u.push_back(I);
    u.push_back(q.S1);
    u.push_back(U3);
    u.push_back(U4);
    u.push_back(scale(s, q.S1 + i * I));
    u.push_back(scale(s, U3 + i * q.S1)); // S1(S2+iI)/√2
    u.push_back(scale(s, U4 + i * U3));   // S1S2(S3+iI)/√2
    u.push_back(scale(s, q.S4 + i * I));
    for (int k = 8; k < n; ++k) u.push_back(I);
    // Products and averages of the symmetries above are unitary by
    // construction (up to rounding at the 1e-15 scale).
    return UnitaryTuple::assume_unitary(alg, std::move(u));
}

UnitaryTuple build_witness_tuple(const WitnessSpec& spec) {
    if (spec.d < 2) throw conformance_error("build_witness_tuple: dimension must be >= 2");
    return build_witness_tuple(spec.d, choose_parameters(spec.kappa, spec.d), spec.n);
}

namespace {

// ───────────────────────────────────────────────────────────────────────────
// Word algebra for the d→∞ limit. A monomial is z·D^q·P where P is the
// affine index map j ↦ ε·j + t·a (ε = ±1, offsets counted in units of
// a = d−m). Using ω^a = e^{-2iθ}, the finite-d relations become exact
// rewrite rules with θ = 2πκ:
//
//   (z1,q1,ε1,t1)·(z2,q2,ε2,t2) = (z1·z2·e^{2iθ·q2·ε1·t1}, q1+ε1·q2, ε1·ε2, t1+ε1·t2)
//   (z,q,ε,t)*                  = (conj(z)·e^{2iθ·q·t}, −q·ε, ε, −ε·t)
//
// and the limit trace keeps only the scalar monomial (q = 0, ε = +1, t = 0):
// translations by nonzero multiples of a and all reflections have vanishing
// normalized trace for large d with gcd(m, d) = 1.

struct MonoKey {
    int q;
    int eps; // +1 or -1
    int t;
    bool operator<(const MonoKey& o) const { return std::tie(q, eps, t) < std::tie(o.q, o.eps, o.t); }
};

using Word = std::map<MonoKey, Complex>;

Word mono(Complex z, int q, int eps, int t) { return Word{{MonoKey{q, eps, t}, z}}; }

void accumulate(Word& w, const MonoKey& k, Complex z) {
    auto [it, fresh] = w.try_emplace(k, z);
    if (!fresh) it->second += z;
}

Word word_add(const Word& x, const Word& y) {
    Word out = x;
    for (const auto& [k, z] : y) accumulate(out, k, z);
    return out;
}

Word word_scale(Complex c, const Word& x) {
    Word out = x;
    for (auto& [k, z] : out) z *= c;
    return out;
}

Word word_mul(const Word& x, const Word& y, double theta) {
    Word out;
    for (const auto& [k1, z1] : x)
        for (const auto& [k2, z2] : y) {
            const Complex phase = unit_phase(2.0 * theta * k2.q * k1.eps * k1.t);
            accumulate(out, MonoKey{k1.q + k1.eps * k2.q, k1.eps * k2.eps, k1.t + k1.eps * k2.t}, z1 * z2 * phase);
        }
    return out;
}

Word word_adjoint(const Word& x, double theta) {
    Word out;
    for (const auto& [k, z] : x)
        accumulate(out, MonoKey{-k.q * k.eps, k.eps, -k.eps * k.t}, std::conj(z) * unit_phase(2.0 * theta * k.q * k.t));
    return out;
}

Complex limit_trace(const Word& x) {
    const auto it = x.find(MonoKey{0, +1, 0});
    return it == x.end() ? Complex(0.0) : it->second;
}

} // namespace

GramMatrix limit_gram(double kappa, int n) {
    if (n < 8) throw conformance_error("limit_gram: tuple length must be >= 8");
    const double theta = kTwoPi * kappa;
    const Complex i(0.0, 1.0);
    const double s = 1.0 / std::numbers::sqrt2;

    const Word I = mono(1.0, 0, +1, 0);
    const Word S1 = mono(unit_phase(theta), 1, -1, 1); // e^{iθ}·D·K
    const Word S2 = mono(1.0, 0, -1, 1);               // K
    const Word S3 = mono(1.0, -1, -1, 0);              // D*·J
    const Word S4 = mono(1.0, 0, -1, 0);               // J

    std::vector<Word> u;
    u.reserve(static_cast<size_t>(n));
    u.push_back(I);
    u.push_back(S1);
    u.push_back(word_mul(S1, S2, theta));
    u.push_back(word_mul(word_mul(S1, S2, theta), S3, theta));
    u.push_back(word_scale(s, word_add(S1, word_scale(i, I))));
    u.push_back(word_mul(S1, word_scale(s, word_add(S2, word_scale(i, I))), theta));
    u.push_back(word_mul(word_mul(S1, S2, theta), word_scale(s, word_add(S3, word_scale(i, I))), theta));
    u.push_back(word_scale(s, word_add(S4, word_scale(i, I))));
    for (int k = 8; k < n; ++k) u.push_back(I);

    Matrix a(n, n);
    for (int col = 0; col < n; ++col) {
        const Word uj_star = word_adjoint(u[static_cast<size_t>(col)], theta);
        for (int row = 0; row < n; ++row)
            a(row, col) = limit_trace(word_mul(uj_star, u[static_cast<size_t>(row)], theta));
    }
    return GramMatrix{std::move(a), {}};
}

} // namespace corrlab
