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
#include "corrlab/fit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "corrlab/random.hpp"

namespace corrlab {

namespace {

void require_matching(const UnitaryTuple& t, const GramMatrix& g, const char* who) {
    if (t.size() != g.n()) {
        std::ostringstream os;
        os << who << ": tuple length " << t.size() << " does not match Gram size " << g.n();
        throw conformance_error(os.str());
    }
}

/// τ-weighted squared Frobenius norm Re τ(x*x).
double tau_norm_sq(const TracialAlgebra& alg, const BlockOperator& x) {
    double s = 0.0;
    for (int k = 0; k < alg.num_blocks(); ++k)
        s += alg.weight(k) * x.block(k).squaredNorm() / static_cast<double>(alg.block_dim(k));
    return s;
}

struct DescentOutcome {
    std::vector<BlockOperator> ops;
    double objective_value = std::numeric_limits<double>::infinity();
    int iterations = 0;
    double grad_norm = std::numeric_limits<double>::infinity();
    bool converged = false;
};

/// One Armijo-backtracked projected-gradient run from a given start.
DescentOutcome descend(const TracialAlgebra& alg, std::vector<BlockOperator> ops, const Matrix& target,
                       int max_iter, double grad_tol, const ArmijoParams& armijo) {
    const int n = static_cast<int>(ops.size());
    Matrix a = correlation_entries(alg, ops);
    double f = (a - target).squaredNorm();

    DescentOutcome out;
    for (int step = 0;; ++step) {
        const Matrix r = a - target;
        std::vector<BlockOperator> tangent;
        tangent.reserve(static_cast<size_t>(n));
        double grad_sq = 0.0;
        for (int k = 0; k < n; ++k) {
            std::vector<Matrix> grad_blocks;
            grad_blocks.reserve(static_cast<size_t>(alg.num_blocks()));
            for (int b = 0; b < alg.num_blocks(); ++b) {
                Matrix gb = Matrix::Zero(alg.block_dim(b), alg.block_dim(b));
                for (int j = 0; j < n; ++j) {
                    const Complex coef = 2.0 * (r(k, j) + std::conj(r(j, k)));
                    gb.noalias() += coef * ops[static_cast<size_t>(j)].block(b);
                }
                grad_blocks.push_back(std::move(gb));
            }
            BlockOperator t = tangent_project(ops[static_cast<size_t>(k)], BlockOperator(std::move(grad_blocks)));
            grad_sq += tau_norm_sq(alg, t);
            tangent.push_back(std::move(t));
        }
        out.grad_norm = std::sqrt(grad_sq);
        if (out.grad_norm <= grad_tol) {
            out.converged = true;
            break;
        }
        if (step >= max_iter) break; // budget exhausted; gradient above is at the final iterate

        // Backtracking line search along the projected direction. The
        // directional derivative along −tangent is −‖tangent‖²_τ because the
        // projection is orthogonal for the same inner product.
        double alpha = armijo.initial_step;
        bool accepted = false;
        for (int bt = 0; bt < armijo.max_backtracks; ++bt) {
            std::vector<BlockOperator> cand;
            cand.reserve(static_cast<size_t>(n));
            for (int k = 0; k < n; ++k) {
                std::vector<Matrix> blocks;
                blocks.reserve(static_cast<size_t>(alg.num_blocks()));
                for (int b = 0; b < alg.num_blocks(); ++b)
                    blocks.push_back(ops[static_cast<size_t>(k)].block(b) -
                                     alpha * tangent[static_cast<size_t>(k)].block(b));
                cand.push_back(polar_retract(BlockOperator(std::move(blocks))));
            }
            const Matrix a_cand = correlation_entries(alg, cand);
            const double f_cand = (a_cand - target).squaredNorm();
            if (f_cand <= f - armijo.sufficient_decrease * alpha * grad_sq) {
                ops = std::move(cand);
                a = a_cand;
                f = f_cand;
                accepted = true;
                break;
            }
            alpha *= armijo.shrink;
        }
        if (!accepted) break; // stalled at numerical noise; keep the iterate
        out.iterations = step + 1;
    }

    out.ops = std::move(ops);
    out.objective_value = f;
    return out;
}

std::vector<BlockOperator> random_start(const TracialAlgebra& alg, int n, uint64_t seed) {
    Rng rng(seed);
    std::vector<BlockOperator> ops;
    ops.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ops.push_back(random_unitary(alg, rng));
    return ops;
}

/// Runs job(i) for i in [0, count) on up to max_workers() threads. Each job
/// writes only its own slot, so scheduling cannot change the results.
template <typename Job>
void run_indexed(int count, Job&& job) {
    const int workers = std::min(count, max_workers());
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<int> next{0};
    auto drain = [&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) job(i);
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers - 1));
    for (int w = 0; w < workers - 1; ++w) pool.emplace_back(drain);
    drain();
    for (std::thread& th : pool) th.join();
}

} // namespace

double objective(const TracialAlgebra& alg, const std::vector<BlockOperator>& ops, const Matrix& target) {
    if (static_cast<int>(ops.size()) != target.rows() || target.rows() != target.cols())
        throw conformance_error("objective: operator count does not match target shape");
    return (correlation_entries(alg, ops) - target).squaredNorm();
}

double objective(const UnitaryTuple& t, const GramMatrix& g) {
    require_matching(t, g, "objective");
    return objective(t.algebra(), t.entries(), g.entries);
}

std::vector<BlockOperator> euclidean_gradient(const TracialAlgebra& alg, const std::vector<BlockOperator>& ops,
                                              const Matrix& target) {
    if (static_cast<int>(ops.size()) != target.rows() || target.rows() != target.cols())
        throw conformance_error("euclidean_gradient: operator count does not match target shape");
    const int n = static_cast<int>(ops.size());
    const Matrix r = correlation_entries(alg, ops) - target;
    std::vector<BlockOperator> grad;
    grad.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        BlockOperator g = BlockOperator::zero(alg);
        for (int j = 0; j < n; ++j) g = g + (2.0 * (r(k, j) + std::conj(r(j, k)))) * ops[static_cast<size_t>(j)];
        grad.push_back(std::move(g));
    }
    return grad;
}

std::vector<BlockOperator> euclidean_gradient(const UnitaryTuple& t, const GramMatrix& g) {
    require_matching(t, g, "euclidean_gradient");
    return euclidean_gradient(t.algebra(), t.entries(), g.entries);
}

BlockOperator tangent_project(const BlockOperator& u, const BlockOperator& g) {
    if (!u.same_shape(g)) throw conformance_error("tangent_project: operand shapes differ");
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<size_t>(u.num_blocks()));
    for (int k = 0; k < u.num_blocks(); ++k) {
        const Matrix a = u.block(k).adjoint() * g.block(k);
        blocks.push_back(u.block(k) * (0.5 * (a - a.adjoint())));
    }
    return BlockOperator(std::move(blocks));
}

namespace {

/// Polar factor of one block. The hot path diagonalizes X*X (Hermitian, so
/// the solver is cheap) and forms X·(X*X)^{-1/2}, then applies two
/// Newton–Schulz sweeps U ← U(3I − U*U)/2 to polish the unitarity defect
/// down to machine precision. Nearly singular inputs fall back to the SVD,
/// which is slow but unconditionally stable.
Matrix polar_factor(const Matrix& m) {
    const int d = static_cast<int>(m.rows());
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m);
    const double lam_max = es.eigenvalues().maxCoeff();
    const double floor = lam_max * 1e-12;
    if (lam_max > 0.0 && es.eigenvalues().minCoeff() > floor) {
        const Matrix root_inv = es.eigenvectors() *
                                es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                es.eigenvectors().adjoint();
        Matrix u = m * root_inv;
        for (int sweep = 0; sweep < 2; ++sweep)
            u = 0.5 * (3.0 * u - u * (u.adjoint() * u));
        if (u.allFinite() &&
            (u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-10)
            return u;
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

} // namespace

BlockOperator polar_retract(const BlockOperator& x) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<size_t>(x.num_blocks()));
    for (int k = 0; k < x.num_blocks(); ++k) blocks.push_back(polar_factor(x.block(k)));
    return BlockOperator(std::move(blocks));
}

int max_workers() {
    if (const char* env = std::getenv("CORRLAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0') return static_cast<int>(std::clamp(v, 1L, 1024L));
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

FitResult fit(const FitProblem& p) {
    const GramValidation v = validate_gram(p.target);
    if (!v.passes(1e-6)) {
        std::ostringstream os;
        os << "fit: target fails Gram validation at 1e-06 (hermiticity defect " << v.hermiticity_defect
           << ", diagonal deviation " << v.max_diag_deviation << ", min eigenvalue " << v.min_eigenvalue << ")";
        throw validation_error(os.str());
    }
    if (p.n != p.target.n()) throw conformance_error("fit: n does not match the target Gram size");
    if (p.n < 1) throw conformance_error("fit: n must be positive");
    if (p.restarts < 1) throw conformance_error("fit: restarts must be positive");
    if (p.max_iter < 0) throw conformance_error("fit: max_iter must be non-negative");
    if (!(p.grad_tol >= 0.0)) throw conformance_error("fit: grad_tol must be non-negative");

    std::vector<DescentOutcome> outcomes(static_cast<size_t>(p.restarts));
    run_indexed(p.restarts, [&](int r) {
        std::vector<BlockOperator> start = random_start(p.shape, p.n, p.seed ^ static_cast<uint64_t>(r));
        outcomes[static_cast<size_t>(r)] = descend(p.shape, std::move(start), p.target.entries, p.max_iter,
                                                   p.grad_tol, ArmijoParams{});
    });

    int best = 0;
    for (int r = 1; r < p.restarts; ++r)
        if (outcomes[static_cast<size_t>(r)].objective_value < outcomes[static_cast<size_t>(best)].objective_value)
            best = r;
    DescentOutcome& win = outcomes[static_cast<size_t>(best)];

    FitResult result{UnitaryTuple::checked(p.shape, std::move(win.ops)),
                     std::sqrt(std::max(0.0, win.objective_value)),
                     win.iterations,
                     win.grad_norm,
                     win.converged,
                     std::nullopt,
                     best,
                     ArmijoParams{}};
    if (p.kappa.has_value() && p.n >= 8)
        result.certificate_at_kappa = certificate(compute_gram(result.tuple), *p.kappa);
    return result;
}

namespace {

/// U ↦ U ⊕ ... ⊕ U (copies along the diagonal) into the single block M_d,
/// d = copies · dim(U). Preserves the normalized trace of every word, hence
/// the Gram matrix.
std::vector<BlockOperator> embed_copies(const std::vector<BlockOperator>& ops, int copies) {
    std::vector<BlockOperator> out;
    out.reserve(ops.size());
    for (const BlockOperator& u : ops) {
        const Matrix& m = u.block(0);
        const int d0 = static_cast<int>(m.rows());
        Matrix big = Matrix::Zero(d0 * copies, d0 * copies);
        for (int c = 0; c < copies; ++c) big.block(c * d0, c * d0, d0, d0) = m;
        out.push_back(BlockOperator::from_matrix(std::move(big)));
    }
    return out;
}

} // namespace

std::vector<SweepRow> residual_sweep(const GramMatrix& target, const std::vector<int>& dims, uint64_t seed,
                                     const SweepOptions& opts) {
    if (dims.empty()) throw conformance_error("residual_sweep: dims must be non-empty");
    const GramValidation v = validate_gram(target);
    if (!v.passes(1e-6)) throw validation_error("residual_sweep: target fails Gram validation at 1e-06");
    const int n = target.n();

    std::vector<SweepRow> rows;
    rows.reserve(dims.size());
    std::vector<BlockOperator> prev_ops;
    int prev_d = 0;

    for (const int d : dims) {
        if (d < 1) throw conformance_error("residual_sweep: dimensions must be positive");
        if (d == prev_d) {
            rows.push_back(rows.back());
            continue;
        }
        const TracialAlgebra shape = TracialAlgebra::single_block(d);
        // Candidate starts: fresh restarts, plus the embedded previous
        // solution when it fits (trace-preserving unital embeddings of
        // M_{d_prev} into M_d exist exactly when d_prev divides d).
        const bool warm = prev_d > 0 && d % prev_d == 0;
        const int candidates = opts.restarts + (warm ? 1 : 0);
        const uint64_t point_seed = seed ^ (0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(d));

        std::vector<DescentOutcome> outcomes(static_cast<size_t>(candidates));
        run_indexed(candidates, [&](int r) {
            std::vector<BlockOperator> start = (warm && r == opts.restarts)
                                                   ? embed_copies(prev_ops, d / prev_d)
                                                   : random_start(shape, n, point_seed ^ static_cast<uint64_t>(r));
            outcomes[static_cast<size_t>(r)] =
                descend(shape, std::move(start), target.entries, opts.max_iter, opts.grad_tol, ArmijoParams{});
        });

        int best = 0;
        for (int r = 1; r < candidates; ++r)
            if (outcomes[static_cast<size_t>(r)].objective_value <
                outcomes[static_cast<size_t>(best)].objective_value)
                best = r;
        DescentOutcome& win = outcomes[static_cast<size_t>(best)];

        SweepRow row;
        row.d = d;
        row.residual = std::sqrt(std::max(0.0, win.objective_value));
        row.iterations = win.iterations;
        row.grad_norm = win.grad_norm;
        row.converged = win.converged;
        row.c.fill(std::numeric_limits<double>::quiet_NaN());
        if (n >= 8) {
            const GramMatrix fitted{correlation_entries(shape, win.ops), {}};
            row.c = certificate(fitted, opts.kappa).c;
        }
        rows.push_back(row);

        prev_ops = std::move(win.ops);
        prev_d = d;
    }
    return rows;
}

} // namespace corrlab
