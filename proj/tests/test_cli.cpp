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
// End-to-end tests that drive the installed binary as a subprocess; the
// build injects its location through CORRLAB_CLI_PATH.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <json.hpp>

#include "corrlab/io.hpp"
#include "corrlab/witness.hpp"

using namespace corrlab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct ScratchDir {
    fs::path dir;
    ScratchDir() {
        dir = fs::temp_directory_path() /
              ("corrlab-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
        fs::create_directories(dir);
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string file(const std::string& name) const { return (dir / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const ScratchDir& tmp, const std::string& args) {
    const std::string out = tmp.file("stdout.txt");
    const std::string err = tmp.file("stderr.txt");
    const std::string cmd = std::string(CORRLAB_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

const std::string kKappa = format_double(std::numbers::sqrt2 - 1.0);

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("witness then gram then certify round trip") {
    ScratchDir tmp;
    const std::string w = tmp.file("w.json");
    const std::string lim = tmp.file("lim.json");
    const std::string g = tmp.file("g.json");

    const RunResult built =
        run_cli(tmp, "witness --kappa " + kKappa + " --dim 32 --n 8 --out " + w + " --limit " + lim);
    REQUIRE(built.code == 0);

    const OperatorFile ops = load_operators(w);
    REQUIRE(ops.operators.size() == 8);
    for (const BlockOperator& u : ops.operators) CHECK(is_unitary(ops.algebra, u, 1e-8));
    REQUIRE(ops.extra.contains("meta"));
    CHECK(ops.extra["meta"]["command"] == "witness");
    CHECK(ops.extra["meta"]["dim"] == 32);

    REQUIRE(run_cli(tmp, "gram --in " + w + " --out " + g).code == 0);
    CHECK(validate_gram(load_gram(g).gram).passes(1e-10));

    // The finite-dimensional Gram certifies exactly at its own phase m/(2d),
    // echoed by the witness command.
    const double theta_over_2pi = ops.extra["meta"]["m"].get<double>() / 64.0;
    const RunResult cert = run_cli(tmp, "certify --gram " + g + " --kappa " + format_double(theta_over_2pi));
    REQUIRE(cert.code == 0);
    const json rep = json::parse(cert.out);
    CHECK(rep["passes"] == true);
    for (const double c : rep["c"]) CHECK(c == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("certify the exact limit matrix") {
    ScratchDir tmp;
    const std::string lim = tmp.file("lim.json");
    const std::string report = tmp.file("report.json");
    REQUIRE(run_cli(tmp, "limit --kappa " + kKappa + " --n 8 --out " + lim).code == 0);

    const RunResult cert =
        run_cli(tmp, "certify --gram " + lim + " --kappa " + kKappa + " --out " + report);
    REQUIRE(cert.code == 0);
    const json rep = json::parse(cert.out);
    CHECK(rep["passes"] == true);
    for (const double c : rep["c"]) CHECK(c == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(rep["meta"]["tol"] == 1e-9); // defaulted flags are echoed

    const json filed = json::parse(slurp(report));
    CHECK(filed["c"] == rep["c"]);
}

TEST_CASE("gram output is byte-deterministic") {
    ScratchDir tmp;
    const std::string w = tmp.file("w.json");
    REQUIRE(run_cli(tmp, "witness --kappa 0.3 --dim 8 --n 8 --out " + w).code == 0);
    // The configuration echo includes the output path, so rerun against the same file.
    const std::string g = tmp.file("g.json");
    REQUIRE(run_cli(tmp, "gram --in " + w + " --out " + g).code == 0);
    const std::string first = slurp(g);
    REQUIRE(run_cli(tmp, "gram --in " + w + " --out " + g).code == 0);
    CHECK(first == slurp(g));
}

TEST_CASE("gram rejects non-unitary entries with the offending index") {
    ScratchDir tmp;
    const TracialAlgebra m2 = TracialAlgebra::single_block(2);
    Matrix half(2, 2);
    half << 0.5, 0, 0, 1;
    OperatorFile file;
    file.algebra = m2;
    file.operators = {BlockOperator::identity(m2), BlockOperator::from_matrix(half)};
    const std::string bad = tmp.file("bad.json");
    save_operators(bad, file);

    const RunResult r = run_cli(tmp, "gram --in " + bad + " --out " + tmp.file("g.json"));
    CHECK(r.code == 2);
    CHECK(r.err.find("entry 2") != std::string::npos);
}

TEST_CASE("flag and input error exit codes") {
    ScratchDir tmp;
    CHECK(run_cli(tmp, "witness --bogus-flag 1 --out x.json").code == 64);
    CHECK(run_cli(tmp, "certify --gram g.json").code == 64); // missing required --kappa
    CHECK(run_cli(tmp, "").code == 64);                      // a subcommand is required
    CHECK(run_cli(tmp, "gram --in " + tmp.file("absent.json") + " --out " + tmp.file("g.json")).code ==
          66);
    CHECK(run_cli(tmp, "certify --gram " + tmp.file("absent.json") + " --kappa 0.1").code == 66);
}

TEST_CASE("validate splits good from bad matrices") {
    ScratchDir tmp;
    const std::string lim = tmp.file("lim.json");
    REQUIRE(run_cli(tmp, "limit --kappa 0.3 --n 8 --out " + lim).code == 0);
    const RunResult good = run_cli(tmp, "validate --gram " + lim);
    CHECK(good.code == 0);
    CHECK(json::parse(good.out)["passes"] == true);

    Matrix bad(2, 2);
    bad << 1, 2, 2, 1; // Hermitian, unit diagonal, but eigenvalues {3, -1}
    GramFile gf;
    gf.gram.entries = bad;
    const std::string badpath = tmp.file("bad.json");
    save_gram(badpath, gf);
    const RunResult r = run_cli(tmp, "validate --gram " + badpath);
    CHECK(r.code == 2);
    CHECK(json::parse(r.out)["passes"] == false);
}

TEST_CASE("fit reaches a realizable target and reports its configuration") {
    ScratchDir tmp;
    GramFile target;
    target.gram.entries = Matrix::Identity(2, 2);
    const std::string g = tmp.file("id2.json");
    save_gram(g, target);

    const std::string out1 = tmp.file("f1.json");
    const std::string args = "fit --gram " + g + " --dim 2 --n 2 --seed 5 --restarts 4 --out ";
    const RunResult r = run_cli(tmp, args + out1);
    REQUIRE(r.code == 0);
    const json res = json::parse(r.out);
    CHECK(res["residual"].get<double>() <= 1e-6);
    CHECK(res["converged"] == true);
    CHECK(res["armijo"]["max_backtracks"] == 40);

    const OperatorFile fitted = load_operators(out1);
    for (const BlockOperator& u : fitted.operators) CHECK(is_unitary(fitted.algebra, u, 1e-8));
    CHECK(fitted.extra["meta"]["seed"] == 5);
    CHECK(fitted.extra["meta"]["restarts"] == 4);

    // Same seed, same bytes; the echoed configuration pins the output path too.
    const std::string first = slurp(out1);
    REQUIRE(run_cli(tmp, args + out1).code == 0);
    CHECK(first == slurp(out1));
}

TEST_CASE("fit accepts multi-block shapes") {
    ScratchDir tmp;
    GramFile target;
    target.gram.entries = Matrix::Identity(2, 2);
    const std::string g = tmp.file("id2.json");
    save_gram(g, target);

    const RunResult r = run_cli(tmp, "fit --gram " + g +
                                         " --blocks 2,2 --weights 0.5,0.5 --n 2 --seed 1 --restarts 4"
                                         " --out " +
                                         tmp.file("f.json"));
    REQUIRE(r.code == 0);
    const OperatorFile fitted = load_operators(tmp.file("f.json"));
    CHECK(fitted.algebra.num_blocks() == 2);
    CHECK(json::parse(r.out)["residual"].get<double>() <= 1e-6);
}

TEST_CASE("strict fit exits 3 when the budget is too small, still writing output") {
    ScratchDir tmp;
    const std::string lim = tmp.file("lim.json");
    REQUIRE(run_cli(tmp, "limit --kappa " + kKappa + " --n 8 --out " + lim).code == 0);

    const std::string out = tmp.file("f.json");
    const RunResult r = run_cli(tmp, "fit --gram " + lim +
                                         " --dim 2 --restarts 1 --max-iter 3 --strict --out " + out);
    CHECK(r.code == 3);
    CHECK(fs::exists(out)); // best iterate is preserved before the strict exit
    CHECK(json::parse(slurp(out))["meta"]["strict"] == true);
}

TEST_CASE("sweep writes the documented CSV") {
    ScratchDir tmp;
    const std::string lim = tmp.file("lim.json");
    REQUIRE(run_cli(tmp, "limit --kappa " + kKappa + " --n 8 --out " + lim).code == 0);

    const std::string csv = tmp.file("sweep.csv");
    const RunResult r = run_cli(tmp, "sweep --gram " + lim + " --dims 2,4 --seed 3 --restarts 2" +
                                         " --max-iter 250 --kappa " + kKappa + " --csv " + csv);
    REQUIRE(r.code == 0);

    const std::vector<std::string> lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].find("# config command=sweep") == 0);
    CHECK(lines[0].find("seed=3") != std::string::npos);
    CHECK(lines[1] == "d,residual,iterations,grad_norm,c1,c2,c3,c4");
    CHECK(lines[2].substr(0, 2) == "2,");
    CHECK(lines[3].substr(0, 2) == "4,");

    const double r2 = std::strtod(lines[2].c_str() + 2, nullptr);
    const double r4 = std::strtod(lines[3].c_str() + 2, nullptr);
    CHECK(r2 > 0.0);
    CHECK(r4 > 0.0);
    CHECK(r4 <= r2 + 1e-9);
}

TEST_CASE("pipeline check passes its own contracts at small dimensions") {
    ScratchDir tmp;
    const std::string csv = tmp.file("pipeline.csv");
    const RunResult r =
        run_cli(tmp, "pipeline-check --kappa " + kKappa + " --dims 8,16,32 --n 8 --csv " + csv);
    REQUIRE(r.code == 0);
    const std::vector<std::string> lines = lines_of(slurp(csv));
    CHECK(lines.size() >= 5); // config + header + one row per dimension
}
