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

#include <vector>

#include "corrlab/algebra.hpp"

namespace corrlab {

/// Per-entry unitarity thresholds for tuples: entries with operator-norm
/// defect above kTupleRejectTol·d are rejected; entries in
/// (kTupleFlagTol·d, kTupleRejectTol·d] are accepted but flagged.
inline constexpr double kTupleRejectTol = 1e-8;
inline constexpr double kTupleFlagTol = 1e-10;

/**
 * An ordered tuple (U_1, ..., U_n) of unitaries in a tracial algebra.
 * Construct through checked() for untrusted input (throws, naming the first
 * offending index) or assume_unitary() for operators that are unitary by
 * construction.
 */
class UnitaryTuple {
  public:
    static UnitaryTuple checked(TracialAlgebra alg, std::vector<BlockOperator> entries);
    static UnitaryTuple assume_unitary(TracialAlgebra alg, std::vector<BlockOperator> entries);

    int size() const { return static_cast<int>(entries_.size()); }
    const TracialAlgebra& algebra() const { return alg_; }
    const BlockOperator& entry(int i) const { return entries_[static_cast<size_t>(i)]; }
    const BlockOperator& operator[](int i) const { return entry(i); }
    const std::vector<BlockOperator>& entries() const { return entries_; }

    /// 0-based indices of entries with near-unitary defect (flag band).
    const std::vector<int>& near_unitary() const { return near_unitary_; }

  private:
    UnitaryTuple(TracialAlgebra alg, std::vector<BlockOperator> entries, std::vector<int> near);

    TracialAlgebra alg_;
    std::vector<BlockOperator> entries_;
    std::vector<int> near_unitary_;
};

/**
 * An n×n complex correlation matrix with the orientation
 * entries(i, j) = τ(U_j* U_i) (0-based storage; reports are 1-based).
 * The type itself admits arbitrary matrices so that candidates can be
 * loaded and inspected; validate_gram checks the actual invariants.
 */
struct GramMatrix {
    Matrix entries;
    /// Indices of tuple entries that were only near-unitary (see UnitaryTuple).
    std::vector<int> flagged;

    int n() const { return static_cast<int>(entries.rows()); }
};

struct GramValidation {
    double hermiticity_defect = 0.0; // max |a_ij - conj(a_ji)|
    double max_diag_deviation = 0.0; // max |a_ii - 1|
    double min_eigenvalue = 0.0;     // of the Hermitian symmetrization

    bool passes(double tol) const {
        return hermiticity_defect <= tol && max_diag_deviation <= tol && min_eigenvalue >= -tol;
    }
};

/// Raw correlation entries a(i, j) = τ(u_j* u_i) with no unitarity checks;
/// the building block shared by compute_gram and the fitting objective.
Matrix correlation_entries(const TracialAlgebra& alg, const std::vector<BlockOperator>& ops);

/// a(i, j) = τ(U_j* U_i). Hermitian with unit diagonal and PSD by
/// construction; near-unitary flags of the tuple are carried over.
GramMatrix compute_gram(const UnitaryTuple& t);

/// Convenience: validates the entries (checked construction) and computes.
GramMatrix compute_gram(const TracialAlgebra& alg, const std::vector<BlockOperator>& unitaries);

/// Reports hermiticity defect, diagonal deviation and the minimum eigenvalue
/// of the Hermitian symmetrization (a + a†)/2.
GramValidation validate_gram(const Matrix& a);
GramValidation validate_gram(const GramMatrix& g);

/**
 * Exact convexity: entrywise weighted direct sum of two tuples of equal
 * length. compute_gram(result) = λ·compute_gram(t1) + (1−λ)·compute_gram(t2)
 * up to rounding.
 */
UnitaryTuple convex_combine(const UnitaryTuple& t1, const UnitaryTuple& t2, double lambda);

} // namespace corrlab
