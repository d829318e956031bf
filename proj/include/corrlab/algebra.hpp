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

#include <utility>
#include <vector>

#include "corrlab/types.hpp"

namespace corrlab {

/// One matrix block of a finite-dimensional tracial algebra.
struct Block {
    int dim;
    double weight;
};

/**
 * A finite direct sum of full matrix blocks M_{d_1} ⊕ ... ⊕ M_{d_r}
 * carrying the tracial state
 *
 *     τ(x) = Σ_k  w_k · tr(x_k) / d_k,      Σ_k w_k = 1,  w_k ≥ 0.
 *
 * The constructor normalizes weight vectors whose sum is within 1e-9 of 1
 * (serialization round-off) and rejects anything further away. Zero-weight
 * blocks are legal but make τ non-faithful; callers that rely on
 * faithfulness should consult faithful().
 */
class TracialAlgebra {
  public:
    explicit TracialAlgebra(std::vector<Block> blocks);

    /// Single full matrix block M_d with the normalized trace.
    static TracialAlgebra single_block(int d);

    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    int block_dim(int k) const { return blocks_[static_cast<size_t>(k)].dim; }
    double weight(int k) const { return blocks_[static_cast<size_t>(k)].weight; }
    const std::vector<Block>& blocks() const { return blocks_; }

    /// Sum of all block dimensions.
    int total_dim() const;

    /// True iff every block weight is strictly positive, i.e. τ is faithful.
    bool faithful() const;

    /// Indices of zero-weight blocks (where τ cannot see the block).
    std::vector<int> zero_weight_blocks() const;

    bool operator==(const TracialAlgebra& other) const;

  private:
    std::vector<Block> blocks_;
};

/**
 * An element of a TracialAlgebra: one dense complex d_k×d_k matrix per
 * block, stored in the block order of the owning algebra. Values are
 * immutable by convention; all operations below return fresh operators.
 */
class BlockOperator {
  public:
    explicit BlockOperator(std::vector<Matrix> blocks) : blocks_(std::move(blocks)) {}

    static BlockOperator identity(const TracialAlgebra& alg);
    static BlockOperator zero(const TracialAlgebra& alg);

    /// Single-block convenience.
    static BlockOperator from_matrix(Matrix m);

    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    const Matrix& block(int k) const { return blocks_[static_cast<size_t>(k)]; }
    const std::vector<Matrix>& blocks() const { return blocks_; }

    bool conforms_to(const TracialAlgebra& alg) const;
    bool same_shape(const BlockOperator& other) const;

  private:
    std::vector<Matrix> blocks_;
};

/// Throws conformance_error unless x matches alg's block layout.
void require_conforms(const TracialAlgebra& alg, const BlockOperator& x, const char* who);

/// τ(x) = Σ_k w_k · tr(x_k)/d_k.
Complex trace(const TracialAlgebra& alg, const BlockOperator& x);

BlockOperator adjoint(const BlockOperator& x);
BlockOperator multiply(const BlockOperator& x, const BlockOperator& y);
BlockOperator scale(Complex z, const BlockOperator& x);
BlockOperator add(const BlockOperator& x, const BlockOperator& y);
BlockOperator subtract(const BlockOperator& x, const BlockOperator& y);

inline BlockOperator operator*(const BlockOperator& x, const BlockOperator& y) { return multiply(x, y); }
inline BlockOperator operator*(Complex z, const BlockOperator& x) { return scale(z, x); }
inline BlockOperator operator+(const BlockOperator& x, const BlockOperator& y) { return add(x, y); }
inline BlockOperator operator-(const BlockOperator& x, const BlockOperator& y) { return subtract(x, y); }

/// Max over blocks of the operator-norm deviation ‖x_k* x_k − I‖.
double unitary_defect(const TracialAlgebra& alg, const BlockOperator& x);

/// True iff unitary_defect(alg, x) ≤ tol. Uses a Frobenius-norm upper bound
/// as a fast path and only falls back to the exact operator norm when the
/// bound is inconclusive.
bool is_unitary(const TracialAlgebra& alg, const BlockOperator& x, double tol);

/// Default tolerance 1e-10 scaled by block dimension: passes iff
/// ‖x_k* x_k − I‖ ≤ 1e-10 · d_k for every block k.
bool is_unitary(const TracialAlgebra& alg, const BlockOperator& x);

/// Like is_unitary but with per-block tolerance per_dim_tol · d_k.
bool is_unitary_scaled(const TracialAlgebra& alg, const BlockOperator& x, double per_dim_tol);

/// Hilbert–Schmidt distance sqrt(Re τ((x−y)*(x−y))). Zero iff x = y when
/// all block weights are strictly positive.
double hs_distance(const TracialAlgebra& alg, const BlockOperator& x, const BlockOperator& y);

/// sqrt(Re τ(x*x)).
double hs_norm(const TracialAlgebra& alg, const BlockOperator& x);

/// Real inner product Re τ(y*x).
double hs_inner(const TracialAlgebra& alg, const BlockOperator& x, const BlockOperator& y);

/**
 * Weighted direct sum: the result lives in the algebra whose blocks are
 * alg1's followed by alg2's, with weights λ·w(alg1) ++ (1−λ)·w(alg2), and
 * carries x1 on the first group and x2 on the second. Then
 * trace(result) = λ·trace(x1) + (1−λ)·trace(x2).
 */
std::pair<TracialAlgebra, BlockOperator> direct_sum(const TracialAlgebra& alg1, const BlockOperator& x1,
                                                    const TracialAlgebra& alg2, const BlockOperator& x2,
                                                    double lambda);

} // namespace corrlab
