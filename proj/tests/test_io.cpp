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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unistd.h>

#include "corrlab/io.hpp"
#include "corrlab/witness.hpp"

using namespace corrlab;
namespace fs = std::filesystem;

namespace {

/// Fresh scratch directory per test case, removed on destruction.
struct ScratchDir {
    fs::path dir;
    ScratchDir() {
        dir = fs::temp_directory_path() /
              ("corrlab-io-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
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
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    os << content;
    REQUIRE(os.good());
}

} // namespace

TEST_CASE("operator files round-trip byte-identically") {
    ScratchDir tmp;
    const UnitaryTuple t = build_witness_tuple(4, 1, 8);

    OperatorFile file;
    file.algebra = t.algebra();
    file.operators = t.entries();
    file.extra["meta"] = {{"tool", "corrlab"}, {"seed", 7}};

    const std::string first = tmp.file("a.json");
    const std::string second = tmp.file("b.json");
    save_operators(first, file);

    const OperatorFile back = load_operators(first);
    REQUIRE(back.algebra.num_blocks() == 1);
    CHECK(back.algebra.block_dim(0) == 4);
    REQUIRE(back.operators.size() == file.operators.size());
    for (size_t i = 0; i < back.operators.size(); ++i)
        CHECK(hs_distance(back.algebra, back.operators[i], file.operators[i]) == 0.0);
    CHECK(back.extra.contains("meta"));
    CHECK_FALSE(back.extra.contains("operators"));

    save_operators(second, back);
    CHECK(slurp(first) == slurp(second));
    CHECK(slurp(first).back() == '\n');
}

TEST_CASE("gram files round-trip byte-identically") {
    ScratchDir tmp;
    GramFile file;
    file.gram = limit_gram(std::numbers::sqrt2 - 1.0, 8);
    file.extra["meta"] = {{"kappa", std::numbers::sqrt2 - 1.0}};

    const std::string first = tmp.file("g.json");
    const std::string second = tmp.file("h.json");
    save_gram(first, file);

    const GramFile back = load_gram(first);
    REQUIRE(back.gram.n() == 8);
    // Exact equality: shortest-round-trip decimals parse back to the same bits.
    CHECK((back.gram.entries - file.gram.entries).cwiseAbs().maxCoeff() == 0.0);
    CHECK(back.extra.contains("meta"));
    CHECK_FALSE(back.extra.contains("entries"));

    save_gram(second, back);
    CHECK(slurp(first) == slurp(second));
}

TEST_CASE("multi-block operator files keep their structure") {
    ScratchDir tmp;
    const TracialAlgebra alg({Block{2, 0.25}, Block{3, 0.75}});
    OperatorFile file;
    file.algebra = alg;
    file.operators = {BlockOperator::identity(alg)};
    const std::string path = tmp.file("m.json");
    save_operators(path, file);

    const OperatorFile back = load_operators(path);
    REQUIRE(back.algebra.num_blocks() == 2);
    CHECK(back.algebra.block_dim(1) == 3);
    CHECK(back.algebra.weight(0) == 0.25);
    CHECK(hs_distance(alg, back.operators[0], file.operators[0]) == 0.0);
}

TEST_CASE("unreadable input raises io_error") {
    ScratchDir tmp;
    CHECK_THROWS_AS(load_operators(tmp.file("missing.json")), io_error);
    CHECK_THROWS_AS(load_gram(tmp.file("missing.json")), io_error);

    const std::string garbled = tmp.file("garbled.json");
    spit(garbled, "{\"algebra\": [oops");
    CHECK_THROWS_AS(load_operators(garbled), io_error);
}

TEST_CASE("schema violations raise validation_error naming the file") {
    ScratchDir tmp;

    SUBCASE("missing algebra") {
        const std::string path = tmp.file("no-algebra.json");
        spit(path, "{\"operators\": []}\n");
        try {
            load_operators(path);
            FAIL("expected validation_error");
        } catch (const validation_error& e) {
            CHECK(std::string(e.what()).find(path) != std::string::npos);
        }
    }
    SUBCASE("block matrix with the wrong number of entries") {
        const std::string path = tmp.file("short-block.json");
        spit(path,
             "{\"algebra\": {\"blocks\": [{\"dim\": 2, \"weight\": 1.0}]},"
             " \"operators\": [[[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]]]}\n");
        CHECK_THROWS_AS(load_operators(path), validation_error);
    }
    SUBCASE("entry that is not a [re, im] pair") {
        const std::string path = tmp.file("bad-pair.json");
        spit(path,
             "{\"algebra\": {\"blocks\": [{\"dim\": 1, \"weight\": 1.0}]},"
             " \"operators\": [[[[1.0]]]]}\n");
        CHECK_THROWS_AS(load_operators(path), validation_error);
    }
    SUBCASE("gram file missing n") {
        const std::string path = tmp.file("no-n.json");
        spit(path, "{\"entries\": []}\n");
        CHECK_THROWS_AS(load_gram(path), validation_error);
    }
    SUBCASE("gram file with non-positive n") {
        const std::string path = tmp.file("zero-n.json");
        spit(path, "{\"n\": 0, \"entries\": []}\n");
        CHECK_THROWS_AS(load_gram(path), validation_error);
    }
    SUBCASE("algebra with weights that do not sum to one") {
        const std::string path = tmp.file("bad-weights.json");
        spit(path,
             "{\"algebra\": {\"blocks\": [{\"dim\": 1, \"weight\": 0.25}]},"
             " \"operators\": []}\n");
        CHECK_THROWS_AS(load_operators(path), validation_error);
    }
}

TEST_CASE("save-side validation") {
    ScratchDir tmp;
    SUBCASE("operators must conform to the declared algebra") {
        OperatorFile file;
        file.algebra = TracialAlgebra::single_block(2);
        file.operators = {BlockOperator::identity(TracialAlgebra::single_block(3))};
        CHECK_THROWS_AS(save_operators(tmp.file("x.json"), file), conformance_error);
    }
    SUBCASE("gram matrices must be square") {
        GramFile file;
        file.gram.entries = Matrix::Zero(2, 3);
        CHECK_THROWS_AS(save_gram(tmp.file("x.json"), file), conformance_error);
    }
    SUBCASE("unwritable destination raises io_error") {
        GramFile file;
        file.gram = limit_gram(0.1, 8);
        CHECK_THROWS_AS(save_gram("/nonexistent-dir/out.json", file), io_error);
    }
}

TEST_CASE("format_double emits shortest round-trip decimals") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.0) == "-2");

    const double samples[] = {1.0 / 3.0,
                              std::numbers::sqrt2,
                              std::numbers::sqrt2 - 1.0,
                              1e-300,
                              6.02214076e23,
                              -0.0,
                              12345678901234567.0,
                              5e-324};
    for (const double x : samples) {
        const std::string s = format_double(x);
        const double back = std::strtod(s.c_str(), nullptr);
        CHECK(back == x);
        CHECK(std::signbit(back) == std::signbit(x));
    }
}

TEST_CASE("write_csv layout") {
    ScratchDir tmp;
    const std::string path = tmp.file("t.csv");
    write_csv(path, {"config seed=7"}, {"d", "residual"}, {{"2", "0.5"}, {"4", "0.25"}});
    CHECK(slurp(path) == "# config seed=7\nd,residual\n2,0.5\n4,0.25\n");

    CHECK_THROWS_AS(write_csv(path, {}, {"a", "b"}, {{"1"}}), conformance_error);
}

TEST_CASE("atomic writes replace and leave no temporaries") {
    ScratchDir tmp;
    const std::string path = tmp.file("out.txt");
    write_text_atomic(path, "first\n");
    write_text_atomic(path, "second\n");
    CHECK(slurp(path) == "second\n");

    int entries = 0;
    for (const auto& e : fs::directory_iterator(tmp.dir)) {
        (void)e;
        ++entries;
    }
    CHECK(entries == 1); // no stray .tmp files
}
