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
#include "corrlab/certificate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace corrlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

void require_unitary_input(const TracialAlgebra& alg, const BlockOperator& x, const char* who) {
    require_conforms(alg, x, who);
    if (!is_unitary(alg, x, 1e-8))
        throw validation_error(std::string(who) + ": input operator is not unitary at 1e-8");
}

} // namespace

double lemma_value(const TracialAlgebra& alg, const BlockOperator& U, const BlockOperator& V) {
    require_unitary_input(alg, U, "lemma_value");
    require_unitary_input(alg, V, "lemma_value");
    const Complex uv = trace(alg, adjoint(U) * V);
    const Complex lin = trace(alg, U) - kSqrt2 * trace(alg, V);
    return kSqrt2 * uv.real() - lin.imag();
}

double lemma_identity_defect(const TracialAlgebra& alg, const BlockOperator& U, const BlockOperator& V) {
    require_conforms(alg, U, "lemma_identity_defect");
    require_conforms(alg, V, "lemma_identity_defect");
    const Complex i(0.0, 1.0);
    const BlockOperator I = BlockOperator::identity(alg);
    const BlockOperator w = U + i * I - scale(kSqrt2, V);
    const Complex lhs = 0.5 * trace(alg, adjoint(w) * w);
    const Complex rhs_tr = trace(alg, scale(-i, U) + scale(kSqrt2 * i, V) - scale(kSqrt2, adjoint(U) * V));
    return std::abs(lhs - (2.0 + rhs_tr.real()));
}

std::string CertificateReport::implication() const {
    std::ostringstream os;
    if (passes) {
        os << "all four certificate values equal 2 within " << tol
           << ": for any realizing tuple V1..V8 in a finite-dimensional algebra with faithful trace, "
              "V1*V2, V2*V3, V3*V4 and e^{-2pi i kappa}V1*V4 are symmetries, so e^{2pi i kappa}I "
              "factors into four symmetries; their determinants are +-1 per block, which is "
              "impossible for irrational kappa.";
    } else {
        os << "certificate deficiency " << deficiency << "; no self-adjointness conclusion at tolerance " << tol
           << ".";
    }
    return os.str();
}

CertificateReport certificate(const GramMatrix& g, double kappa, double tol) {
    if (g.n() < 8) throw conformance_error("certificate: needs at least an 8x8 correlation matrix");
    const GramValidation v = validate_gram(g);
    if (!v.passes(1e-6)) {
        std::ostringstream os;
        os << "certificate: input fails correlation-matrix validation (hermiticity " << v.hermiticity_defect
           << ", diagonal " << v.max_diag_deviation << ", min eigenvalue " << v.min_eigenvalue << ")";
        throw validation_error(os.str());
    }

    const Matrix& a = g.entries; // 0-based storage of the 1-based a[i][j]
    CertificateReport r;
    r.kappa = kappa;
    r.tol = tol;
    for (int j = 1; j <= 3; ++j)
        r.c[static_cast<size_t>(j - 1)] =
            kSqrt2 * a(j + 3, j).real() - (a(j, j - 1) - kSqrt2 * a(j + 3, j - 1)).imag();
    const Complex phase(std::cos(kTwoPi * kappa), std::sin(kTwoPi * kappa));
    r.c[3] = kSqrt2 * (phase * a(7, 3)).real() - (std::conj(phase) * a(3, 0) - kSqrt2 * a(7, 0)).imag();

    r.deficiency = 0.0;
    r.passes = true;
    for (double cj : r.c) {
        r.deficiency += 2.0 - cj;
        if (std::abs(cj - 2.0) > tol) r.passes = false;
    }
    return r;
}

namespace {

void require_symmetry_input(const TracialAlgebra& alg, const BlockOperator& x, size_t index) {
    require_conforms(alg, x, "det_obstruction");
    double herm = 0.0;
    double invol = 0.0;
    for (int k = 0; k < x.num_blocks(); ++k) {
        const Matrix& b = x.block(k);
        herm = std::max(herm, (b - b.adjoint()).norm());
        invol = std::max(invol, (b * b - Matrix::Identity(b.rows(), b.cols())).norm());
    }
    if (herm > kSymmetryInputTol || invol > kSymmetryInputTol) {
        std::ostringstream os;
        os << "det_obstruction: input " << index + 1 << " is not a symmetry at " << kSymmetryInputTol
           << " (self-adjointness defect " << herm << ", involution defect " << invol << ")";
        throw validation_error(os.str());
    }
}

} // namespace

std::vector<Complex> det_obstruction(const TracialAlgebra& alg, const std::vector<BlockOperator>& symmetries) {
    for (size_t i = 0; i < symmetries.size(); ++i) require_symmetry_input(alg, symmetries[i], i);
    std::vector<Complex> out;
    out.reserve(static_cast<size_t>(alg.num_blocks()));
    for (int k = 0; k < alg.num_blocks(); ++k) {
        Complex prod = 1.0;
        for (const BlockOperator& s : symmetries) prod *= s.block(k).determinant();
        out.push_back(prod);
    }
    return out;
}

bool phase_reachable_by_symmetries(const TracialAlgebra& alg, double kappa, double tol) {
    for (int k = 0; k < alg.num_blocks(); ++k) {
        // det(e^{2πiκ}I_d) = e^{2πiκd} must be ±1: dκ must sit on the
        // half-integer lattice.
        const double x = alg.block_dim(k) * kappa;
        const double dist = std::abs(std::remainder(x, 0.5));
        if (dist > tol) return false;
    }
    return true;
}

} // namespace corrlab
