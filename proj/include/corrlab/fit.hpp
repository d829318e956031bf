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
#include <cstdint>
#include <optional>
#include <vector>

#include "corrlab/certificate.hpp"
#include "corrlab/gram.hpp"

namespace corrlab {

/// Armijo backtracking parameters. The project-wide defaults below are the
/// only configuration the descent uses; they are echoed in FitResult so that
/// archived results state how they were produced.
struct ArmijoParams {
    double initial_step = 1.0;
    double shrink = 0.5;
    double sufficient_decrease = 1e-4;
    int max_backtracks = 40;
};

/**
 * Membership probe: how close can a tuple of n unitaries in `shape` come to
 * realizing `target` as its correlation matrix? The answer is a best-found
 * residual from multi-restart Riemannian descent — an upper bound on the
 * true distance, never a lower bound.
 */
struct FitProblem {
    GramMatrix target;
    TracialAlgebra shape = TracialAlgebra::single_block(1);
    int n = 0; ///< tuple length; must equal target.n()
    uint64_t seed = 0;
    int max_iter = 5000;
    double grad_tol = 1e-8;
    int restarts = 8;
    /// When set (and n ≥ 8), the fitted Gram matrix is also run through
    /// certificate() at this κ and the report attached to the result.
    std::optional<double> kappa;
};

struct FitResult {
    UnitaryTuple tuple;
    double residual = 0.0; ///< Frobenius distance ‖compute_gram(tuple) − target‖
    int iterations = 0;    ///< accepted descent steps of the winning restart
    double grad_norm = 0.0;
    bool converged = false; ///< grad_norm ≤ grad_tol before the budget ran out
    std::optional<CertificateReport> certificate_at_kappa;
    int best_restart = 0;
    ArmijoParams armijo;
};

/// f(t) = Σ_{i,j} |τ(U_j* U_i) − g[i][j]|² ≥ 0, zero iff the tuple realizes
/// g exactly.
double objective(const UnitaryTuple& t, const GramMatrix& g);

/// Unchecked overload on raw operators (descent/test internals).
double objective(const TracialAlgebra& alg, const std::vector<BlockOperator>& ops, const Matrix& target);

/**
 * Gradient of the objective with respect to each U_k under the real trace
 * inner product ⟨X, Y⟩ = Re τ(Y*X):
 *
 *     grad_k = 2 Σ_j (r_kj + conj(r_jk)) · U_j,    r_ij = τ(U_j*U_i) − g[i][j],
 *
 * so that d/ds f(..., U_k + sX, ...)|₀ = Re τ(grad_k* X) for every direction
 * X. The block weight/dimension factors of τ live inside the inner product.
 */
std::vector<BlockOperator> euclidean_gradient(const UnitaryTuple& t, const GramMatrix& g);
std::vector<BlockOperator> euclidean_gradient(const TracialAlgebra& alg, const std::vector<BlockOperator>& ops,
                                              const Matrix& target);

/// Orthogonal projection of an ambient gradient onto the tangent space of
/// the unitary group at u: u · skew(u† g) per block, skew(A) = (A − A†)/2.
BlockOperator tangent_project(const BlockOperator& u, const BlockOperator& g);

/// Nearest unitary in Frobenius norm (the polar factor), per block.
BlockOperator polar_retract(const BlockOperator& x);

/**
 * Multi-restart projected gradient descent over the product of unitary
 * groups. Restart r draws Haar-like initial unitaries from a SplitMix64
 * stream seeded with seed ⊕ r; each iteration projects the gradient onto
 * the tangent space, backtracks (Armijo), and retracts by polar projection.
 * A run stops at grad_norm ≤ grad_tol, on a failed line search, or at
 * max_iter; the best restart by (residual, then restart index) wins.
 * Deterministic for a fixed seed. Restarts may run concurrently
 * (CORRLAB_THREADS caps the workers) without affecting the result.
 */
FitResult fit(const FitProblem& p);

struct SweepOptions {
    int restarts = 8;
    int max_iter = 5000;
    double grad_tol = 1e-8;
    /// κ at which the certificate columns are evaluated (c₁..c₃ do not
    /// depend on it; c₄ does).
    double kappa = 0.0;
};

struct SweepRow {
    int d = 0;
    double residual = 0.0;
    int iterations = 0;
    double grad_norm = 0.0;
    bool converged = false; ///< the winning run hit grad_tol (not a CSV column)
    /// Certificate values of the fitted Gram matrix at SweepOptions::kappa;
    /// NaN when the target has fewer than 8 rows.
    std::array<double, 4> c{};
};

/**
 * Best-found residual per dimension, fitting in the single block M_d for
 * each d in dims. In addition to the fresh restarts, each point is seeded
 * with the previous point's solution embedded block-diagonally
 * (U ↦ U ⊕ ... ⊕ U, which preserves the Gram matrix) whenever the previous
 * dimension divides the current one; along such divisibility chains the
 * reported residuals are non-increasing. A repeated dimension reuses the
 * previous row outright.
 */
std::vector<SweepRow> residual_sweep(const GramMatrix& target, const std::vector<int>& dims, uint64_t seed,
                                     const SweepOptions& opts = {});

/// Worker cap: CORRLAB_THREADS when set to a positive integer, otherwise
/// the runtime's hardware concurrency (at least 1).
int max_workers();

} // namespace corrlab
