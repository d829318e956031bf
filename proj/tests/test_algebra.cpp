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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "corrlab/algebra.hpp"
#include "corrlab/random.hpp"

using namespace corrlab;

namespace {

const Complex kI(0.0, 1.0);

Matrix diag2(Complex a, Complex b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

TracialAlgebra two_block_alg() { return TracialAlgebra({Block{1, 0.25}, Block{2, 0.75}}); }

} // namespace

TEST_CASE("algebra construction and invariants") {
    SUBCASE("weights must sum to one") {
        CHECK_THROWS_AS(TracialAlgebra({Block{2, 0.5}, Block{2, 0.6}}), validation_error);
        CHECK_THROWS_AS(TracialAlgebra({Block{2, 0.9}}), validation_error);
        CHECK_THROWS_AS(TracialAlgebra(std::vector<Block>{}), validation_error);
    }
    SUBCASE("serialization round-off is normalized away") {
        TracialAlgebra a({Block{2, 0.5 + 4e-10}, Block{3, 0.5}});
        CHECK(std::abs(a.weight(0) + a.weight(1) - 1.0) < 1e-15);
    }
    SUBCASE("negative weights and bad dimensions are rejected") {
        CHECK_THROWS_AS(TracialAlgebra({Block{2, -0.1}, Block{2, 1.1}}), validation_error);
        CHECK_THROWS_AS(TracialAlgebra({Block{0, 1.0}}), validation_error);
    }
    SUBCASE("zero-weight blocks are legal but flagged as non-faithful") {
        TracialAlgebra a({Block{2, 1.0}, Block{3, 0.0}});
        CHECK_FALSE(a.faithful());
        CHECK(a.zero_weight_blocks() == std::vector<int>{1});
        CHECK(two_block_alg().faithful());
    }
    SUBCASE("total dimension") {
        CHECK(two_block_alg().total_dim() == 3);
        CHECK(TracialAlgebra::single_block(7).total_dim() == 7);
    }
}

TEST_CASE("trace of basic operators") {
    const TracialAlgebra m2 = TracialAlgebra::single_block(2);

    CHECK(trace(m2, BlockOperator::identity(m2)) == Complex(1.0));
    CHECK(std::abs(trace(m2, BlockOperator::from_matrix(diag2(1.0, -1.0)))) == 0.0);

    // Weighted two-block trace: blocks (1, 2), weights (0.25, 0.75),
    // x = (scalar 2, identity) -> 0.25*2 + 0.75*1 = 1.25.
    const TracialAlgebra a = two_block_alg();
    std::vector<Matrix> blocks{Matrix::Constant(1, 1, 2.0), Matrix::Identity(2, 2)};
    CHECK(trace(a, BlockOperator(std::move(blocks))).real() == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("trace is tracial and positive on 500 random operator pairs") {
    const TracialAlgebra alg({Block{2, 0.3}, Block{3, 0.5}, Block{1, 0.2}});
    Rng rng(7001);
    auto random_op = [&] {
        std::vector<Matrix> blocks;
        for (int k = 0; k < alg.num_blocks(); ++k) {
            Matrix m(alg.block_dim(k), alg.block_dim(k));
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c) m(r, c) = rng.complex_normal();
            blocks.push_back(std::move(m));
        }
        return BlockOperator(std::move(blocks));
    };
    for (int trial = 0; trial < 500; ++trial) {
        const BlockOperator x = random_op();
        const BlockOperator y = random_op();
        CHECK(std::abs(trace(alg, x * y) - trace(alg, y * x)) <= 1e-10);
        const Complex positive = trace(alg, adjoint(x) * x);
        CHECK(positive.real() >= 0.0);
        CHECK(std::abs(positive.imag()) <= 1e-12);
    }
}

TEST_CASE("adjoint, multiply and scale behave blockwise") {
    const TracialAlgebra m2 = TracialAlgebra::single_block(2);
    const BlockOperator id = BlockOperator::identity(m2);
    const BlockOperator sz = BlockOperator::from_matrix(diag2(1.0, -1.0));

    CHECK(hs_distance(m2, adjoint(id), id) == 0.0);
    CHECK(hs_distance(m2, sz * sz, id) == 0.0);
    CHECK(hs_distance(m2, adjoint(kI * id), Complex(-kI) * id) == 0.0);

    // adjoint(xy) = adjoint(y) adjoint(x)
    Rng rng(42);
    const BlockOperator u = random_unitary(m2, rng);
    const BlockOperator v = random_unitary(m2, rng);
    CHECK(hs_distance(m2, adjoint(u * v), adjoint(v) * adjoint(u)) <= 1e-14);

    CHECK_THROWS_AS(multiply(id, BlockOperator::from_matrix(Matrix::Identity(3, 3))), conformance_error);
}

TEST_CASE("is_unitary accepts unitaries and rejects contractions") {
    const TracialAlgebra m2 = TracialAlgebra::single_block(2);
    CHECK(is_unitary(m2, BlockOperator::identity(m2), 1e-10));
    CHECK_FALSE(is_unitary(m2, BlockOperator::from_matrix(diag2(1.0, 0.5)), 1e-10));

    // (S + iI)/sqrt(2) is unitary for any symmetry S; here S = flip.
    Matrix flip(2, 2);
    flip << 0, 1, 1, 0;
    const Matrix u = (flip + kI * Matrix::Identity(2, 2)) / std::numbers::sqrt2;
    CHECK(is_unitary(m2, BlockOperator::from_matrix(u), 1e-10));

    CHECK_THROWS_AS(is_unitary(m2, BlockOperator::identity(m2), 0.0), validation_error);
}

TEST_CASE("unitary_defect measures the operator norm of x*x - I") {
    const TracialAlgebra m2 = TracialAlgebra::single_block(2);
    // diag(1, 0.5): x*x - I = diag(0, -0.75).
    CHECK(unitary_defect(m2, BlockOperator::from_matrix(diag2(1.0, 0.5))) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(unitary_defect(m2, BlockOperator::identity(m2)) <= 1e-15);
}

TEST_CASE("hs_distance basics and the triangle inequality") {
    const TracialAlgebra m1 = TracialAlgebra::single_block(1);
    const BlockOperator one = BlockOperator::from_matrix(Matrix::Constant(1, 1, 1.0));
    const BlockOperator minus = BlockOperator::from_matrix(Matrix::Constant(1, 1, -1.0));
    CHECK(hs_distance(m1, one, minus) == doctest::Approx(2.0).epsilon(1e-14));

    const TracialAlgebra m2 = TracialAlgebra::single_block(2);
    CHECK(hs_distance(m2, BlockOperator::identity(m2), BlockOperator::from_matrix(diag2(1.0, -1.0))) ==
          doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));

    Rng rng(9);
    const TracialAlgebra alg({Block{2, 0.6}, Block{3, 0.4}});
    for (int trial = 0; trial < 100; ++trial) {
        const BlockOperator x = random_unitary(alg, rng);
        const BlockOperator y = random_unitary(alg, rng);
        const BlockOperator z = random_unitary(alg, rng);
        CHECK(hs_distance(alg, x, z) <= hs_distance(alg, x, y) + hs_distance(alg, y, z) + 1e-10);
    }
}

TEST_CASE("hs_inner matches trace and hs_norm") {
    const TracialAlgebra alg({Block{2, 0.5}, Block{2, 0.5}});
    Rng rng(123);
    const BlockOperator x = random_unitary(alg, rng);
    const BlockOperator y = random_unitary(alg, rng);
    CHECK(hs_inner(alg, x, y) == doctest::Approx(trace(alg, adjoint(y) * x).real()).epsilon(1e-13));
    CHECK(hs_norm(alg, x) == doctest::Approx(1.0).epsilon(1e-13)); // unitaries are HS-normalized
}

TEST_CASE("direct_sum mixes traces affinely") {
    const TracialAlgebra m2 = TracialAlgebra::single_block(2);
    const BlockOperator id = BlockOperator::identity(m2);
    const BlockOperator sz = BlockOperator::from_matrix(diag2(1.0, -1.0));

    SUBCASE("endpoints") {
        auto [a1, x1] = direct_sum(m2, sz, m2, id, 1.0);
        CHECK(std::abs(trace(a1, x1) - trace(m2, sz)) <= 1e-15);
        auto [a0, x0] = direct_sum(m2, sz, m2, id, 0.0);
        CHECK(std::abs(trace(a0, x0) - trace(m2, id)) <= 1e-15);
    }
    SUBCASE("midpoint: identity with diag(1,-1) has trace 0.5") {
        auto [alg, x] = direct_sum(m2, id, m2, sz, 0.5);
        CHECK(trace(alg, x).real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(alg.num_blocks() == 2);
        CHECK(alg.total_dim() == 4);
    }
    SUBCASE("random lambda additivity to 1e-12") {
        Rng rng(5150);
        for (int trial = 0; trial < 50; ++trial) {
            const double lambda = rng.uniform();
            const BlockOperator x = random_unitary(m2, rng);
            const BlockOperator y = random_unitary(m2, rng);
            auto [alg, z] = direct_sum(m2, x, m2, y, lambda);
            const Complex expect = lambda * trace(m2, x) + (1.0 - lambda) * trace(m2, y);
            CHECK(std::abs(trace(alg, z) - expect) <= 1e-12);
        }
    }
    SUBCASE("lambda outside [0,1] is rejected") {
        CHECK_THROWS_AS(direct_sum(m2, id, m2, id, -0.1), std::invalid_argument);
        CHECK_THROWS_AS(direct_sum(m2, id, m2, id, 1.1), std::invalid_argument);
    }
}

TEST_CASE("conformance errors name the operation") {
    const TracialAlgebra m2 = TracialAlgebra::single_block(2);
    const BlockOperator wrong = BlockOperator::from_matrix(Matrix::Identity(3, 3));
    try {
        trace(m2, wrong);
        FAIL("expected conformance_error");
    } catch (const conformance_error& e) {
        CHECK(std::string(e.what()).find("trace") != std::string::npos);
    }
    CHECK_THROWS_AS(hs_norm(m2, wrong), conformance_error);
}

TEST_CASE("random_unitary produces unitaries and is seed-deterministic") {
    const TracialAlgebra alg({Block{3, 0.5}, Block{5, 0.5}});
    Rng r1(2024), r2(2024);
    const BlockOperator u1 = random_unitary(alg, r1);
    const BlockOperator u2 = random_unitary(alg, r2);
    CHECK(is_unitary(alg, u1));
    CHECK(hs_distance(alg, u1, u2) == 0.0); // bit-identical streams

    Rng r3(2025);
    CHECK(hs_distance(alg, u1, random_unitary(alg, r3)) > 1e-3);
}

TEST_CASE("random_symmetry produces self-adjoint involutions") {
    const TracialAlgebra alg = TracialAlgebra::single_block(4);
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const BlockOperator s = random_symmetry(alg, rng);
        CHECK(hs_distance(alg, s, adjoint(s)) <= 1e-12);
        CHECK(hs_distance(alg, s * s, BlockOperator::identity(alg)) <= 1e-12);
    }
}
