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

#include "corrlab/gram.hpp"

namespace corrlab {

/// Clock and flip generators on C^d for phase index m:
///   D = diag(ω^j), ω = e^{2πi/d}
///   J = permutation of j ↦ −j (mod d)
///   K = permutation of j ↦ (d−m)−j (mod d)
/// They satisfy J·D·J = D* and K·D·K = ω^{d−m}·D*.
struct ClockFlip {
    Matrix D;
    Matrix J;
    Matrix K;
};

ClockFlip build_clock_flip(int d, int m);

/**
 * Four self-adjoint unitaries on a single block of dimension d whose
 * product is the scalar e^{iθ}·I with θ = π·m/d:
 *
 *   S1 = e^{iθ}·D·K,  S2 = K,  S3 = D*·J,  S4 = J,
 *
 * so S1·S2 = e^{iθ}·D, S3·S4 = D*, and S1·S2·S3·S4 = e^{iθ}·I exactly.
 * Each S_i is an involution, hence has determinant ±1.
 */
struct SymmetryQuadruple {
    int d = 0;
    int m = 0;
    BlockOperator S1, S2, S3, S4;

    double theta() const;

    /// {S1, S2, S3, S4} in order.
    std::vector<BlockOperator> list() const { return {S1, S2, S3, S4}; }
};

SymmetryQuadruple build_symmetries(int d, int m);

/**
 * Best rational phase index at dimension d for the target phase 2πκ:
 * the m in [0, d) with gcd(m, d) = 1 minimizing the circle distance
 * between πm/d and 2πκ. Ties break toward the smaller m.
 */
int choose_parameters(double kappa, int d);

/// Target phase 2πκ, tuple length n ≥ 8, single-block dimension d ≥ 2.
struct WitnessSpec {
    double kappa = 0.0;
    int n = 8;
    int d = 2;
};

/**
 * The eight-unitary witness tuple on a single block of dimension d, from
 * the quadruple at m = choose_parameters(κ, d):
 *
 *   U1 = I, U2 = S1, U3 = S1·S2, U4 = S1·S2·S3 = e^{iθ}·S4,
 *   U5 = (S1+iI)/√2, U6 = S1(S2+iI)/√2, U7 = S1S2(S3+iI)/√2,
 *   U8 = (S4+iI)/√2, and U_k = I for k ≥ 9.
 */
UnitaryTuple build_witness_tuple(const WitnessSpec& spec);

/// Same, with the phase index pinned explicitly.
UnitaryTuple build_witness_tuple(int d, int m, int n);

/**
 * The exact d→∞ limit of compute_gram(build_witness_tuple(κ, n, d)),
 * computed by symbolic word reduction: each entry τ(U_j* U_i) expands into
 * monomials z·D^q·P with P an affine index map generated by j ↦ −j and
 * j ↦ a−j (a = d−m); in the limit the normalized trace of a monomial is z
 * for the scalar z·I and 0 otherwise, and the finite-d phase e^{iπm/d}
 * becomes e^{2πiκ}.
 */
GramMatrix limit_gram(double kappa, int n);

} // namespace corrlab
