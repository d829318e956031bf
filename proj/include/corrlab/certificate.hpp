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

#include <array>
#include <string>
#include <vector>

#include "corrlab/gram.hpp"

namespace corrlab {

/**
 * The self-adjointness functional √2·Re τ(U*V) − Im τ(U − √2·V).
 * Always ≤ 2 for unitary U, V, with equality iff V = (U+iI)/√2 — which
 * forces U = U* when τ is faithful. Inputs must be unitary at 1e-8.
 */
double lemma_value(const TracialAlgebra& alg, const BlockOperator& U, const BlockOperator& V);

/**
 * |½·τ((U+iI−√2V)*(U+iI−√2V)) − (2 + Re τ(−iU + √2·iV − √2·U*V))|.
 * An algebraic identity for unitary U, V: at most rounding noise.
 */
double lemma_identity_defect(const TracialAlgebra& alg, const BlockOperator& U, const BlockOperator& V);

/**
 * The four self-adjointness certificates of an 8×8 correlation matrix
 * (1-based orientation a[i][j] = τ(U_j* U_i)):
 *
 *   c_j = √2·Re a[j+4][j+1] − Im(a[j+1][j] − √2·a[j+4][j]),  j = 1, 2, 3,
 *   c_4 = √2·Re(e^{2πiκ}·a[8][4]) − Im(e^{−2πiκ}·a[4][1] − √2·a[8][1]).
 *
 * When all four equal 2 and the matrix is realized in a finite-dimensional
 * algebra with faithful trace, the products V1*V2, V2*V3, V3*V4 and
 * e^{−2πiκ}·V1*V4 are symmetries, so e^{2πiκ}·I factors into four
 * symmetries — impossible for irrational κ since every such product has
 * determinant ±1.
 */
struct CertificateReport {
    double kappa = 0.0;
    std::array<double, 4> c{};
    double deficiency = 0.0; // Σ_j (2 − c_j)
    bool passes = false;     // all |c_j − 2| ≤ tol
    double tol = 1e-9;

    /// Human-readable statement of what passes = true implies.
    std::string implication() const;
};

/// Default tolerance for "passes"; raw c_j are always reported.
inline constexpr double kCertificateTol = 1e-9;

/// Reads the leading 8×8 block of g; g must be at least 8×8 and pass
/// validate_gram at 1e-6. κ is explicit because c_4 depends on it.
CertificateReport certificate(const GramMatrix& g, double kappa, double tol = kCertificateTol);

/// Per-entry hermiticity/involution thresholds for symmetry inputs.
inline constexpr double kSymmetryInputTol = 1e-8;

/**
 * Per-block product of determinants of a list of symmetries (self-adjoint
 * unitaries, checked at 1e-8). Each value is ±1 up to rounding: symmetries
 * are involutions, so their spectra lie in {+1, −1}.
 */
std::vector<Complex> det_obstruction(const TracialAlgebra& alg, const std::vector<BlockOperator>& symmetries);

/// Default tolerance for the determinant obstruction query.
inline constexpr double kObstructionTol = 1e-4;

/**
 * Can a finite product of symmetries in alg equal the scalar e^{2πiκ}·I?
 * Determinants force e^{2πiκ·d_k} = ±1 on every block, so the answer is
 * yes only if dist(d_k·κ mod 1, {0, ½}) ≤ tol for every block dimension
 * d_k; any violating block rules it out.
 */
bool phase_reachable_by_symmetries(const TracialAlgebra& alg, double kappa, double tol = kObstructionTol);

} // namespace corrlab
