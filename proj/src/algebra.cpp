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
#include "corrlab/algebra.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace corrlab {

namespace {

constexpr double kWeightSumSlack = 1e-9;

std::string shape_string(const BlockOperator& x) {
    std::ostringstream os;
    os << "(";
    for (int k = 0; k < x.num_blocks(); ++k) {
        if (k > 0) os << ",";
        os << x.block(k).rows() << "x" << x.block(k).cols();
    }
    os << ")";
    return os.str();
}

} // namespace

TracialAlgebra::TracialAlgebra(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw validation_error("TracialAlgebra: needs at least one block");
    double sum = 0.0;
    for (const Block& b : blocks_) {
        if (b.dim < 1) throw validation_error("TracialAlgebra: block dimension must be >= 1");
        if (b.weight < 0.0) throw validation_error("TracialAlgebra: block weight must be >= 0");
        sum += b.weight;
    }
    if (std::abs(sum - 1.0) > kWeightSumSlack) {
        std::ostringstream os;
        os << "TracialAlgebra: weights sum to " << sum << ", expected 1 within " << kWeightSumSlack;
        throw validation_error(os.str());
    }
    for (Block& b : blocks_) b.weight /= sum;
}

TracialAlgebra TracialAlgebra::single_block(int d) { return TracialAlgebra({Block{d, 1.0}}); }

int TracialAlgebra::total_dim() const {
    int n = 0;
    for (const Block& b : blocks_) n += b.dim;
    return n;
}

bool TracialAlgebra::faithful() const {
    for (const Block& b : blocks_)
        if (b.weight <= 0.0) return false;
    return true;
}

std::vector<int> TracialAlgebra::zero_weight_blocks() const {
    std::vector<int> out;
    for (int k = 0; k < num_blocks(); ++k)
        if (blocks_[static_cast<size_t>(k)].weight <= 0.0) out.push_back(k);
    return out;
}

bool TracialAlgebra::operator==(const TracialAlgebra& other) const {
    if (blocks_.size() != other.blocks_.size()) return false;
    for (size_t k = 0; k < blocks_.size(); ++k)
        if (blocks_[k].dim != other.blocks_[k].dim || blocks_[k].weight != other.blocks_[k].weight) return false;
    return true;
}

BlockOperator BlockOperator::identity(const TracialAlgebra& alg) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<size_t>(alg.num_blocks()));
    for (int k = 0; k < alg.num_blocks(); ++k)
        blocks.push_back(Matrix::Identity(alg.block_dim(k), alg.block_dim(k)));
    return BlockOperator(std::move(blocks));
}

BlockOperator BlockOperator::zero(const TracialAlgebra& alg) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<size_t>(alg.num_blocks()));
    for (int k = 0; k < alg.num_blocks(); ++k)
        blocks.push_back(Matrix::Zero(alg.block_dim(k), alg.block_dim(k)));
    return BlockOperator(std::move(blocks));
}

BlockOperator BlockOperator::from_matrix(Matrix m) {
    std::vector<Matrix> blocks;
    blocks.push_back(std::move(m));
    return BlockOperator(std::move(blocks));
}

bool BlockOperator::conforms_to(const TracialAlgebra& alg) const {
    if (num_blocks() != alg.num_blocks()) return false;
    for (int k = 0; k < num_blocks(); ++k) {
        const Matrix& m = block(k);
        if (m.rows() != alg.block_dim(k) || m.cols() != alg.block_dim(k)) return false;
    }
    return true;
}

bool BlockOperator::same_shape(const BlockOperator& other) const {
    if (num_blocks() != other.num_blocks()) return false;
    for (int k = 0; k < num_blocks(); ++k)
        if (block(k).rows() != other.block(k).rows() || block(k).cols() != other.block(k).cols()) return false;
    return true;
}

void require_conforms(const TracialAlgebra& alg, const BlockOperator& x, const char* who) {
    if (!x.conforms_to(alg)) {
        std::ostringstream os;
        os << who << ": operator shape " << shape_string(x) << " does not conform to the algebra";
        throw conformance_error(os.str());
    }
}

Complex trace(const TracialAlgebra& alg, const BlockOperator& x) {
    require_conforms(alg, x, "trace");
    Complex t = 0.0;
    for (int k = 0; k < alg.num_blocks(); ++k)
        t += alg.weight(k) * x.block(k).trace() / static_cast<double>(alg.block_dim(k));
    return t;
}

BlockOperator adjoint(const BlockOperator& x) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<size_t>(x.num_blocks()));
    for (int k = 0; k < x.num_blocks(); ++k) blocks.push_back(x.block(k).adjoint());
    return BlockOperator(std::move(blocks));
}

BlockOperator multiply(const BlockOperator& x, const BlockOperator& y) {
    if (!x.same_shape(y)) throw conformance_error("multiply: operand shapes differ");
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<size_t>(x.num_blocks()));
    for (int k = 0; k < x.num_blocks(); ++k) blocks.push_back(x.block(k) * y.block(k));
    return BlockOperator(std::move(blocks));
}

BlockOperator scale(Complex z, const BlockOperator& x) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<size_t>(x.num_blocks()));
    for (int k = 0; k < x.num_blocks(); ++k) blocks.push_back(z * x.block(k));
    return BlockOperator(std::move(blocks));
}

BlockOperator add(const BlockOperator& x, const BlockOperator& y) {
    if (!x.same_shape(y)) throw conformance_error("add: operand shapes differ");
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<size_t>(x.num_blocks()));
    for (int k = 0; k < x.num_blocks(); ++k) blocks.push_back(x.block(k) + y.block(k));
    return BlockOperator(std::move(blocks));
}

BlockOperator subtract(const BlockOperator& x, const BlockOperator& y) {
    if (!x.same_shape(y)) throw conformance_error("subtract: operand shapes differ");
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<size_t>(x.num_blocks()));
    for (int k = 0; k < x.num_blocks(); ++k) blocks.push_back(x.block(k) - y.block(k));
    return BlockOperator(std::move(blocks));
}

namespace {

// ‖x*x − I‖ for one block, exact operator norm via Hermitian eigenvalues.
double block_unitary_defect(const Matrix& m) {
    Matrix e = m.adjoint() * m;
    e.diagonal().array() -= 1.0;
    Matrix h = 0.5 * (e + e.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Frobenius norm of x*x − I, an upper bound for the operator norm.
double block_unitary_defect_frob(const Matrix& m) {
    Matrix e = m.adjoint() * m;
    e.diagonal().array() -= 1.0;
    return e.norm();
}

} // namespace

double unitary_defect(const TracialAlgebra& alg, const BlockOperator& x) {
    require_conforms(alg, x, "unitary_defect");
    double worst = 0.0;
    for (int k = 0; k < x.num_blocks(); ++k) worst = std::max(worst, block_unitary_defect(x.block(k)));
    return worst;
}

bool is_unitary(const TracialAlgebra& alg, const BlockOperator& x, double tol) {
    require_conforms(alg, x, "is_unitary");
    if (tol <= 0.0) throw validation_error("is_unitary: tolerance must be positive");
    for (int k = 0; k < x.num_blocks(); ++k) {
        if (block_unitary_defect_frob(x.block(k)) <= tol) continue;
        if (block_unitary_defect(x.block(k)) > tol) return false;
    }
    return true;
}

bool is_unitary(const TracialAlgebra& alg, const BlockOperator& x) { return is_unitary_scaled(alg, x, 1e-10); }

bool is_unitary_scaled(const TracialAlgebra& alg, const BlockOperator& x, double per_dim_tol) {
    require_conforms(alg, x, "is_unitary");
    for (int k = 0; k < x.num_blocks(); ++k) {
        const double tol = per_dim_tol * alg.block_dim(k);
        if (block_unitary_defect_frob(x.block(k)) <= tol) continue;
        if (block_unitary_defect(x.block(k)) > tol) return false;
    }
    return true;
}

double hs_distance(const TracialAlgebra& alg, const BlockOperator& x, const BlockOperator& y) {
    require_conforms(alg, x, "hs_distance");
    require_conforms(alg, y, "hs_distance");
    double sq = 0.0;
    for (int k = 0; k < alg.num_blocks(); ++k)
        sq += alg.weight(k) * (x.block(k) - y.block(k)).squaredNorm() / static_cast<double>(alg.block_dim(k));
    return std::sqrt(std::max(sq, 0.0));
}

double hs_norm(const TracialAlgebra& alg, const BlockOperator& x) {
    require_conforms(alg, x, "hs_norm");
    double sq = 0.0;
    for (int k = 0; k < alg.num_blocks(); ++k)
        sq += alg.weight(k) * x.block(k).squaredNorm() / static_cast<double>(alg.block_dim(k));
    return std::sqrt(std::max(sq, 0.0));
}

double hs_inner(const TracialAlgebra& alg, const BlockOperator& x, const BlockOperator& y) {
    require_conforms(alg, x, "hs_inner");
    require_conforms(alg, y, "hs_inner");
    double acc = 0.0;
    for (int k = 0; k < alg.num_blocks(); ++k) {
        const Complex dot = y.block(k).conjugate().cwiseProduct(x.block(k)).sum();
        acc += alg.weight(k) * dot.real() / static_cast<double>(alg.block_dim(k));
    }
    return acc;
}

std::pair<TracialAlgebra, BlockOperator> direct_sum(const TracialAlgebra& alg1, const BlockOperator& x1,
                                                    const TracialAlgebra& alg2, const BlockOperator& x2,
                                                    double lambda) {
    require_conforms(alg1, x1, "direct_sum");
    require_conforms(alg2, x2, "direct_sum");
    if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("direct_sum: lambda must lie in [0, 1]");

    std::vector<Block> blocks;
    blocks.reserve(static_cast<size_t>(alg1.num_blocks() + alg2.num_blocks()));
    std::vector<Matrix> mats;
    mats.reserve(blocks.capacity());
    for (int k = 0; k < alg1.num_blocks(); ++k) {
        blocks.push_back(Block{alg1.block_dim(k), lambda * alg1.weight(k)});
        mats.push_back(x1.block(k));
    }
    for (int k = 0; k < alg2.num_blocks(); ++k) {
        blocks.push_back(Block{alg2.block_dim(k), (1.0 - lambda) * alg2.weight(k)});
        mats.push_back(x2.block(k));
    }
    return {TracialAlgebra(std::move(blocks)), BlockOperator(std::move(mats))};
}

} // namespace corrlab
