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
//
// corrlab — correlation matrices of unitary tuples in tracial algebras.
//
// Subcommands: witness, gram, certify, fit, sweep, limit, validate,
// pipeline-check. All file outputs are written atomically and embed the
// resolved configuration (every flag, defaulted or not) under "meta" in
// JSON outputs or as leading `# config` comment lines in CSV outputs.
//
// Exit codes: 0 success; 2 validation failure; 3 non-convergence under
// --strict; 64 flag usage error; 66 unreadable input.

#include <cstdint>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corrlab/certificate.hpp"
#include "corrlab/fit.hpp"
#include "corrlab/io.hpp"
#include "corrlab/pipeline.hpp"
#include "corrlab/witness.hpp"

namespace {

using corrlab::Block;
using corrlab::BlockOperator;
using corrlab::Complex;
using corrlab::GramFile;
using corrlab::GramMatrix;
using corrlab::OperatorFile;
using corrlab::TracialAlgebra;
using corrlab::UnitaryTuple;
using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitUsage = 64;
constexpr int kExitNoInput = 66;

json certificate_json(const corrlab::CertificateReport& rep) {
    json j{{"kappa", rep.kappa},
           {"c", {rep.c[0], rep.c[1], rep.c[2], rep.c[3]}},
           {"deficiency", rep.deficiency},
           {"passes", rep.passes},
           {"tol", rep.tol}};
    if (rep.passes) j["implication"] = rep.implication();
    return j;
}

TracialAlgebra shape_from_flags(int dim, const std::vector<int>& blocks, const std::vector<double>& weights) {
    if (!blocks.empty()) {
        if (weights.size() != blocks.size())
            throw corrlab::validation_error("--weights must list one weight per --blocks entry");
        std::vector<Block> bs;
        bs.reserve(blocks.size());
        for (size_t k = 0; k < blocks.size(); ++k) bs.push_back(Block{blocks[k], weights[k]});
        return TracialAlgebra(std::move(bs));
    }
    if (!weights.empty()) throw corrlab::validation_error("--weights requires --blocks");
    return TracialAlgebra::single_block(dim);
}

struct WitnessArgs {
    double kappa = std::numbers::sqrt2 - 1.0;
    int dim = 64;
    int n = 8;
    std::string out;
    std::string limit_out;
};

int run_witness(const WitnessArgs& a) {
    const int m = corrlab::choose_parameters(a.kappa, a.dim);
    const UnitaryTuple tuple = corrlab::build_witness_tuple(a.dim, m, a.n);

    const json config{{"command", "witness"},   {"kappa", a.kappa},
                      {"dim", a.dim},           {"n", a.n},
                      {"m", m},                 {"theta_over_2pi", static_cast<double>(m) / (2.0 * a.dim)},
                      {"out", a.out},           {"limit", a.limit_out}};
    OperatorFile file{tuple.algebra(), tuple.entries(), json{{"meta", config}}};
    corrlab::save_operators(a.out, file);

    if (!a.limit_out.empty()) {
        GramFile gf{corrlab::limit_gram(a.kappa, a.n), json{{"meta", config}}};
        corrlab::save_gram(a.limit_out, gf);
    }
    return 0;
}

struct GramArgs {
    std::string in;
    std::string out;
};

int run_gram(const GramArgs& a) {
    const OperatorFile file = corrlab::load_operators(a.in);
    const GramMatrix g = corrlab::compute_gram(file.algebra, file.operators); // validates unitarity
    json config{{"command", "gram"}, {"in", a.in}, {"out", a.out}};
    if (!g.flagged.empty()) config["flagged"] = g.flagged;
    corrlab::save_gram(a.out, GramFile{g, json{{"meta", config}}});
    return 0;
}

struct CertifyArgs {
    std::string gram;
    double kappa = 0.0;
    double tol = corrlab::kCertificateTol;
    std::string out;
};

int run_certify(const CertifyArgs& a) {
    const GramFile gf = corrlab::load_gram(a.gram);
    const corrlab::CertificateReport rep = corrlab::certificate(gf.gram, a.kappa, a.tol);
    json doc = certificate_json(rep);
    doc["meta"] = {{"command", "certify"}, {"gram", a.gram}, {"kappa", a.kappa}, {"tol", a.tol}, {"out", a.out}};
    std::cout << doc.dump(2) << "\n";
    if (!a.out.empty()) corrlab::write_text_atomic(a.out, doc.dump() + "\n");
    return 0;
}

struct FitArgs {
    std::string gram;
    int dim = 2;
    std::vector<int> blocks;
    std::vector<double> weights;
    int n = 0;
    uint64_t seed = 0;
    int restarts = 8;
    int max_iter = 5000;
    double grad_tol = 1e-8;
    std::optional<double> kappa;
    std::string out;
    bool strict = false;
};

int run_fit(const FitArgs& a) {
    const GramFile gf = corrlab::load_gram(a.gram);
    corrlab::FitProblem p;
    p.target = gf.gram;
    p.shape = shape_from_flags(a.dim, a.blocks, a.weights);
    p.n = a.n > 0 ? a.n : gf.gram.n();
    p.seed = a.seed;
    p.max_iter = a.max_iter;
    p.grad_tol = a.grad_tol;
    p.restarts = a.restarts;
    p.kappa = a.kappa;
    const corrlab::FitResult r = corrlab::fit(p);

    json config{{"command", "fit"},   {"gram", a.gram},         {"dim", a.dim},
                {"blocks", a.blocks}, {"weights", a.weights},   {"n", p.n},
                {"seed", a.seed},     {"restarts", a.restarts}, {"max_iter", a.max_iter},
                {"grad_tol", a.grad_tol}, {"out", a.out},       {"strict", a.strict}};
    if (a.kappa.has_value()) config["kappa"] = *a.kappa;
    json meta{{"meta", config},
              {"result",
               {{"residual", r.residual},
                {"iterations", r.iterations},
                {"grad_norm", r.grad_norm},
                {"converged", r.converged},
                {"best_restart", r.best_restart},
                {"armijo",
                 {{"initial_step", r.armijo.initial_step},
                  {"shrink", r.armijo.shrink},
                  {"sufficient_decrease", r.armijo.sufficient_decrease},
                  {"max_backtracks", r.armijo.max_backtracks}}}}}};
    if (r.certificate_at_kappa.has_value()) meta["result"]["certificate"] = certificate_json(*r.certificate_at_kappa);

    corrlab::save_operators(a.out, OperatorFile{r.tuple.algebra(), r.tuple.entries(), meta});
    std::cout << meta["result"].dump(2) << "\n";
    if (a.strict && !r.converged)
        throw corrlab::convergence_error("fit did not reach grad_tol within the iteration budget");
    return 0;
}

struct SweepArgs {
    std::string gram;
    std::vector<int> dims;
    uint64_t seed = 0;
    int restarts = 8;
    int max_iter = 5000;
    double grad_tol = 1e-8;
    double kappa = 0.0;
    std::string csv;
    bool strict = false;
};

int run_sweep(const SweepArgs& a) {
    const GramFile gf = corrlab::load_gram(a.gram);
    corrlab::SweepOptions opts;
    opts.restarts = a.restarts;
    opts.max_iter = a.max_iter;
    opts.grad_tol = a.grad_tol;
    opts.kappa = a.kappa;
    const std::vector<corrlab::SweepRow> rows = corrlab::residual_sweep(gf.gram, a.dims, a.seed, opts);

    std::string dims_str;
    for (size_t i = 0; i < a.dims.size(); ++i) dims_str += (i ? "," : "") + std::to_string(a.dims[i]);
    const std::vector<std::string> config{
        "config command=sweep gram=" + a.gram + " dims=" + dims_str + " seed=" + std::to_string(a.seed) +
        " restarts=" + std::to_string(a.restarts) + " max_iter=" + std::to_string(a.max_iter) +
        " grad_tol=" + corrlab::format_double(a.grad_tol) + " kappa=" + corrlab::format_double(a.kappa) +
        " csv=" + a.csv + " strict=" + (a.strict ? std::string("true") : std::string("false"))};
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const corrlab::SweepRow& r : rows)
        cells.push_back({std::to_string(r.d), corrlab::format_double(r.residual), std::to_string(r.iterations),
                         corrlab::format_double(r.grad_norm), corrlab::format_double(r.c[0]),
                         corrlab::format_double(r.c[1]), corrlab::format_double(r.c[2]),
                         corrlab::format_double(r.c[3])});
    corrlab::write_csv(a.csv, config, {"d", "residual", "iterations", "grad_norm", "c1", "c2", "c3", "c4"}, cells);

    if (a.strict)
        for (const corrlab::SweepRow& r : rows)
            if (!r.converged)
                throw corrlab::convergence_error("sweep point d=" + std::to_string(r.d) +
                                                 " did not reach grad_tol");
    return 0;
}

struct LimitArgs {
    double kappa = std::numbers::sqrt2 - 1.0;
    int n = 8;
    std::string out;
};

int run_limit(const LimitArgs& a) {
    const json config{{"command", "limit"}, {"kappa", a.kappa}, {"n", a.n}, {"out", a.out}};
    corrlab::save_gram(a.out, GramFile{corrlab::limit_gram(a.kappa, a.n), json{{"meta", config}}});
    return 0;
}

struct ValidateArgs {
    std::string gram;
    double tol = 1e-8;
};

int run_validate(const ValidateArgs& a) {
    const GramFile gf = corrlab::load_gram(a.gram);
    const corrlab::GramValidation v = corrlab::validate_gram(gf.gram);
    const bool ok = v.passes(a.tol);
    const json doc{{"hermiticity_defect", v.hermiticity_defect},
                   {"max_diag_deviation", v.max_diag_deviation},
                   {"min_eigenvalue", v.min_eigenvalue},
                   {"passes", ok},
                   {"meta", {{"command", "validate"}, {"gram", a.gram}, {"tol", a.tol}}}};
    std::cout << doc.dump(2) << "\n";
    return ok ? 0 : kExitValidation;
}

struct PipelineArgs {
    double kappa = std::numbers::sqrt2 - 1.0;
    std::vector<int> dims{64, 128, 256, 512};
    int n = 8;
    std::string csv;
};

int run_pipeline(const PipelineArgs& a) {
    const corrlab::PipelineReport rep = corrlab::pipeline_check(a.kappa, a.dims, a.n);

    std::string dims_str;
    for (size_t i = 0; i < a.dims.size(); ++i) dims_str += (i ? "," : "") + std::to_string(a.dims[i]);
    const std::vector<std::string> config{"config command=pipeline-check kappa=" + corrlab::format_double(a.kappa) +
                                          " dims=" + dims_str + " n=" + std::to_string(a.n) + " csv=" + a.csv};
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rep.rows.size());
    for (const corrlab::PipelineRow& r : rep.rows) {
        std::vector<std::string> row{std::to_string(r.d), std::to_string(r.m),
                                     corrlab::format_double(r.theta_over_2pi), corrlab::format_double(r.max_error)};
        for (const double c : r.c_theta) row.push_back(corrlab::format_double(c));
        for (const double c : r.c_kappa) row.push_back(corrlab::format_double(c));
        row.push_back(corrlab::format_double(r.det.real()));
        cells.push_back(std::move(row));
    }
    if (!a.csv.empty())
        corrlab::write_csv(a.csv, config,
                           {"d", "m", "theta_over_2pi", "max_error", "c1_theta", "c2_theta", "c3_theta", "c4_theta",
                            "c1_kappa", "c2_kappa", "c3_kappa", "c4_kappa", "det"},
                           cells);

    json doc{{"kappa", rep.kappa},
             {"n", rep.n},
             {"convergence_non_increasing", rep.convergence_non_increasing},
             {"certificates_exact", rep.certificates_exact},
             {"determinants_pm_one", rep.determinants_pm_one},
             {"meta", {{"command", "pipeline-check"}, {"kappa", a.kappa}, {"dims", a.dims}, {"n", a.n}, {"csv", a.csv}}}};
    json jrows = json::array();
    for (const corrlab::PipelineRow& r : rep.rows)
        jrows.push_back({{"d", r.d},
                         {"m", r.m},
                         {"max_error", r.max_error},
                         {"det", {r.det.real(), r.det.imag()}}});
    doc["rows"] = std::move(jrows);
    std::cout << doc.dump(2) << "\n";

    if (!rep.all_contracts_hold()) throw corrlab::validation_error("pipeline-check contract violated");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"correlation matrices of unitary tuples: witnesses, certificates, fitting"};
    app.require_subcommand(1);

    WitnessArgs wa;
    CLI::App* witness = app.add_subcommand("witness", "build the eight-unitary witness tuple at a finite dimension");
    witness->add_option("--kappa", wa.kappa, "target phase as a fraction of a full turn")->capture_default_str();
    witness->add_option("--dim", wa.dim, "single-block dimension d >= 2")->capture_default_str();
    witness->add_option("--n", wa.n, "tuple length (>= 8)")->capture_default_str();
    witness->add_option("--out", wa.out, "operator JSON output path")->required();
    witness->add_option("--limit", wa.limit_out, "also write the exact limit Gram JSON here");

    GramArgs ga;
    CLI::App* gram = app.add_subcommand("gram", "compute the correlation matrix of an operator file");
    gram->add_option("--in", ga.in, "operator JSON input path")->required();
    gram->add_option("--out", ga.out, "Gram JSON output path")->required();

    CertifyArgs ca;
    CLI::App* certify = app.add_subcommand("certify", "evaluate the four self-adjointness certificates");
    certify->add_option("--gram", ca.gram, "Gram JSON input path")->required();
    certify->add_option("--kappa", ca.kappa, "phase parameter for c4")->required();
    certify->add_option("--tol", ca.tol, "pass tolerance on |c_j - 2|")->capture_default_str();
    certify->add_option("--out", ca.out, "optional JSON report output path");

    FitArgs fa;
    CLI::App* fit = app.add_subcommand("fit", "fit a unitary tuple to a target Gram matrix");
    fit->add_option("--gram", fa.gram, "target Gram JSON path")->required();
    fit->add_option("--dim", fa.dim, "single-block dimension")->capture_default_str();
    fit->add_option("--blocks", fa.blocks, "block dimensions d1,d2,... (overrides --dim)")->delimiter(',');
    fit->add_option("--weights", fa.weights, "block weights w1,w2,... (with --blocks)")->delimiter(',');
    fit->add_option("--n", fa.n, "tuple length (default: target size)");
    fit->add_option("--seed", fa.seed, "RNG seed")->capture_default_str();
    fit->add_option("--restarts", fa.restarts, "independent restarts")->capture_default_str();
    fit->add_option("--max-iter", fa.max_iter, "iteration budget per restart")->capture_default_str();
    fit->add_option("--grad-tol", fa.grad_tol, "gradient-norm stopping threshold")->capture_default_str();
    double fit_kappa = 0.0;
    CLI::Option* fit_kappa_opt = fit->add_option("--kappa", fit_kappa, "also certify the fitted Gram at this phase");
    fit->add_option("--out", fa.out, "fitted operator JSON output path")->required();
    fit->add_flag("--strict", fa.strict, "exit 3 unless the winning restart converged");

    SweepArgs sa;
    CLI::App* sweep = app.add_subcommand("sweep", "best-found residual per dimension with warm starts");
    sweep->add_option("--gram", sa.gram, "target Gram JSON path")->required();
    sweep->add_option("--dims", sa.dims, "dimensions d1,d2,...")->required()->delimiter(',');
    sweep->add_option("--seed", sa.seed, "RNG seed")->capture_default_str();
    sweep->add_option("--restarts", sa.restarts, "independent restarts per dimension")->capture_default_str();
    sweep->add_option("--max-iter", sa.max_iter, "iteration budget per restart")->capture_default_str();
    sweep->add_option("--grad-tol", sa.grad_tol, "gradient-norm stopping threshold")->capture_default_str();
    sweep->add_option("--kappa", sa.kappa, "phase for the certificate columns")->capture_default_str();
    sweep->add_option("--csv", sa.csv, "CSV output path")->required();
    sweep->add_flag("--strict", sa.strict, "exit 3 unless every dimension converged");

    LimitArgs la;
    CLI::App* limit = app.add_subcommand("limit", "write the exact limit Gram matrix");
    limit->add_option("--kappa", la.kappa, "target phase as a fraction of a full turn")->capture_default_str();
    limit->add_option("--n", la.n, "matrix size (>= 8)")->capture_default_str();
    limit->add_option("--out", la.out, "Gram JSON output path")->required();

    ValidateArgs va;
    CLI::App* validate = app.add_subcommand("validate", "check Gram-matrix invariants");
    validate->add_option("--gram", va.gram, "Gram JSON input path")->required();
    validate->add_option("--tol", va.tol, "tolerance for all three invariants")->capture_default_str();

    PipelineArgs pa;
    CLI::App* pipeline = app.add_subcommand("pipeline-check", "end-to-end witness/certificate reproduction sweep");
    pipeline->add_option("--kappa", pa.kappa, "target phase")->capture_default_str();
    pipeline->add_option("--dims", pa.dims, "dimension sweep")->delimiter(',')->capture_default_str();
    pipeline->add_option("--n", pa.n, "tuple length")->capture_default_str();
    pipeline->add_option("--csv", pa.csv, "summary CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (witness->parsed()) return run_witness(wa);
        if (gram->parsed()) return run_gram(ga);
        if (certify->parsed()) return run_certify(ca);
        if (fit->parsed()) {
            if (fit_kappa_opt->count() > 0) fa.kappa = fit_kappa;
            return run_fit(fa);
        }
        if (sweep->parsed()) return run_sweep(sa);
        if (limit->parsed()) return run_limit(la);
        if (validate->parsed()) return run_validate(va);
        if (pipeline->parsed()) return run_pipeline(pa);
    } catch (const corrlab::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoInput;
    } catch (const corrlab::convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const corrlab::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) { // conformance errors included
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage; // unreachable: require_subcommand(1)
}
