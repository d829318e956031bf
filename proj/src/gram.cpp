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
#include "corrlab/gram.hpp"

#include <sstream>

namespace corrlab {

UnitaryTuple::UnitaryTuple(TracialAlgebra alg, std::vector<BlockOperator> entries, std::vector<int> near)
    : alg_(std::move(alg)), entries_(std::move(entries)), near_unitary_(std::move(near)) {}

UnitaryTuple UnitaryTuple::checked(TracialAlgebra alg, std::vector<BlockOperator> entries) {
    if (entries.empty()) throw validation_error("UnitaryTuple: needs at least one entry");
    std::vector<int> near;
    for (size_t i = 0; i < entries.size(); ++i) {
        require_conforms(alg, entries[i], "UnitaryTuple");
        if (!is_unitary_scaled(alg, entries[i], kTupleRejectTol)) {
            std::ostringstream os;
            os << "UnitaryTuple: entry " << i + 1 << " of " << entries.size() << " is not unitary (defect "
               << unitary_defect(alg, entries[i]) << " exceeds " << kTupleRejectTol << " per dimension)";
            throw validation_error(os.str());
        }
        if (!is_unitary_scaled(alg, entries[i], kTupleFlagTol)) near.push_back(static_cast<int>(i));
    }
    return UnitaryTuple(std::move(alg), std::move(entries), std::move(near));
}

UnitaryTuple UnitaryTuple::assume_unitary(TracialAlgebra alg, std::vector<BlockOperator> entries) {
    if (entries.empty()) throw validation_error("UnitaryTuple: needs at least one entry");
    for (const BlockOperator& e : entries) require_conforms(alg, e, "UnitaryTuple");
    return UnitaryTuple(std::move(alg), std::move(entries), {});
}

namespace {

// τ(x* y) without forming the product: blockwise Frobenius inner products
// weighted by w_k/d_k.
Complex correlation(const TracialAlgebra& alg, const BlockOperator& x, const BlockOperator& y) {
    Complex t = 0.0;
    for (int k = 0; k < alg.num_blocks(); ++k) {
        const Complex dot = x.block(k).conjugate().cwiseProduct(y.block(k)).sum();
        t += alg.weight(k) * dot / static_cast<double>(alg.block_dim(k));
    }
    return t;
}

} // namespace

Matrix correlation_entries(const TracialAlgebra& alg, const std::vector<BlockOperator>& ops) {
    const int n = static_cast<int>(ops.size());
    Matrix a(n, n);
    // Each entry is computed in isolation; a(i, j) = τ(u_j* u_i).
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = correlation(alg, ops[static_cast<size_t>(j)], ops[static_cast<size_t>(i)]);
    return a;
}

GramMatrix compute_gram(const UnitaryTuple& t) {
    return GramMatrix{correlation_entries(t.algebra(), t.entries()), t.near_unitary()};
}

GramMatrix compute_gram(const TracialAlgebra& alg, const std::vector<BlockOperator>& unitaries) {
    return compute_gram(UnitaryTuple::checked(alg, unitaries));
}

GramValidation validate_gram(const Matrix& a) {
    if (a.rows() != a.cols()) throw conformance_error("validate_gram: matrix is not square");
    GramValidation v;
    v.hermiticity_defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
    v.max_diag_deviation = (a.diagonal().array() - 1.0).abs().maxCoeff();
    const Matrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    v.min_eigenvalue = es.eigenvalues().minCoeff();
    return v;
}

GramValidation validate_gram(const GramMatrix& g) { return validate_gram(g.entries); }

UnitaryTuple convex_combine(const UnitaryTuple& t1, const UnitaryTuple& t2, double lambda) {
    if (t1.size() != t2.size()) throw conformance_error("convex_combine: tuple lengths differ");
    if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("convex_combine: lambda must lie in [0, 1]");

    std::vector<Block> blocks;
    const TracialAlgebra& a1 = t1.algebra();
    const TracialAlgebra& a2 = t2.algebra();
    for (int k = 0; k < a1.num_blocks(); ++k) blocks.push_back(Block{a1.block_dim(k), lambda * a1.weight(k)});
    for (int k = 0; k < a2.num_blocks(); ++k) blocks.push_back(Block{a2.block_dim(k), (1.0 - lambda) * a2.weight(k)});
    TracialAlgebra combined(std::move(blocks));

    std::vector<BlockOperator> entries;
    entries.reserve(static_cast<size_t>(t1.size()));
    for (int i = 0; i < t1.size(); ++i) {
        std::vector<Matrix> mats;
        mats.reserve(static_cast<size_t>(a1.num_blocks() + a2.num_blocks()));
        for (int k = 0; k < a1.num_blocks(); ++k) mats.push_back(t1.entry(i).block(k));
        for (int k = 0; k < a2.num_blocks(); ++k) mats.push_back(t2.entry(i).block(k));
        entries.emplace_back(std::move(mats));
    }
    // Direct sums of unitaries are unitary.
    return UnitaryTuple::assume_unitary(std::move(combined), std::move(entries));
}

} // namespace corrlab
