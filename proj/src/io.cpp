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
#include "corrlab/io.hpp"

#include <unistd.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace corrlab {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open " + path + " for reading");
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        throw io_error(path + " is not valid JSON: " + e.what());
    }
}

[[noreturn]] void bad_schema(const std::string& path, const std::string& what) {
    throw validation_error(path + ": " + what);
}

/// Reads a row-major [re, im]-pair array of length d² into a d×d matrix.
Matrix parse_block_matrix(const json& arr, int d, const std::string& path, const std::string& where) {
    if (!arr.is_array() || arr.size() != static_cast<size_t>(d) * static_cast<size_t>(d))
        bad_schema(path, where + " must be a row-major array of length dim² = " + std::to_string(d * d));
    Matrix m(d, d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            const json& pair = arr[static_cast<size_t>(r) * static_cast<size_t>(d) + static_cast<size_t>(c)];
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
                bad_schema(path, where + " entries must be [re, im] number pairs");
            m(r, c) = Complex(pair[0].get<double>(), pair[1].get<double>());
        }
    }
    return m;
}

json dump_block_matrix(const Matrix& m) {
    json arr = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) arr.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    return arr;
}

json strip_keys(const json& doc, std::initializer_list<const char*> keys) {
    json extra = json::object();
    for (const auto& [key, value] : doc.items()) {
        bool data_key = false;
        for (const char* k : keys) data_key = data_key || key == k;
        if (!data_key) extra[key] = value;
    }
    return extra;
}

} // namespace

OperatorFile load_operators(const std::string& path) {
    const json doc = parse_file(path);
    if (!doc.is_object()) bad_schema(path, "top level must be a JSON object");
    if (!doc.contains("algebra") || !doc["algebra"].is_object() || !doc["algebra"].contains("blocks"))
        bad_schema(path, "missing \"algebra\" object with a \"blocks\" array");
    const json& jblocks = doc["algebra"]["blocks"];
    if (!jblocks.is_array() || jblocks.empty()) bad_schema(path, "\"algebra.blocks\" must be a non-empty array");

    std::vector<Block> blocks;
    blocks.reserve(jblocks.size());
    for (const json& jb : jblocks) {
        if (!jb.is_object() || !jb.contains("dim") || !jb.contains("weight") || !jb["dim"].is_number_integer() ||
            !jb["weight"].is_number())
            bad_schema(path, "each block must be an object {\"dim\": int, \"weight\": number}");
        blocks.push_back(Block{jb["dim"].get<int>(), jb["weight"].get<double>()});
    }
    TracialAlgebra alg(std::move(blocks)); // validates dims/weights

    if (!doc.contains("operators") || !doc["operators"].is_array())
        bad_schema(path, "missing \"operators\" array");
    std::vector<BlockOperator> ops;
    ops.reserve(doc["operators"].size());
    for (size_t i = 0; i < doc["operators"].size(); ++i) {
        const json& jop = doc["operators"][i];
        const std::string where = "operators[" + std::to_string(i) + "]";
        if (!jop.is_array() || jop.size() != static_cast<size_t>(alg.num_blocks()))
            bad_schema(path, where + " must list one block matrix per algebra block");
        std::vector<Matrix> mats;
        mats.reserve(jop.size());
        for (int k = 0; k < alg.num_blocks(); ++k)
            mats.push_back(parse_block_matrix(jop[static_cast<size_t>(k)], alg.block_dim(k), path,
                                              where + "[" + std::to_string(k) + "]"));
        ops.emplace_back(std::move(mats));
    }
    return OperatorFile{std::move(alg), std::move(ops), strip_keys(doc, {"algebra", "operators"})};
}

GramFile load_gram(const std::string& path) {
    const json doc = parse_file(path);
    if (!doc.is_object()) bad_schema(path, "top level must be a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) bad_schema(path, "missing integer \"n\"");
    const int n = doc["n"].get<int>();
    if (n < 1) bad_schema(path, "\"n\" must be positive");
    if (!doc.contains("entries")) bad_schema(path, "missing \"entries\" array");
    GramFile out;
    out.gram.entries = parse_block_matrix(doc["entries"], n, path, "\"entries\"");
    out.extra = strip_keys(doc, {"n", "entries"});
    return out;
}

nlohmann::json operators_to_json(const OperatorFile& file) {
    json doc = file.extra.is_object() ? file.extra : json::object();
    json jblocks = json::array();
    for (const Block& b : file.algebra.blocks()) jblocks.push_back({{"dim", b.dim}, {"weight", b.weight}});
    doc["algebra"] = {{"blocks", std::move(jblocks)}};
    json jops = json::array();
    for (const BlockOperator& op : file.operators) {
        json jop = json::array();
        for (int k = 0; k < op.num_blocks(); ++k) jop.push_back(dump_block_matrix(op.block(k)));
        jops.push_back(std::move(jop));
    }
    doc["operators"] = std::move(jops);
    return doc;
}

nlohmann::json gram_to_json(const GramFile& file) {
    json doc = file.extra.is_object() ? file.extra : json::object();
    doc["n"] = file.gram.n();
    doc["entries"] = dump_block_matrix(file.gram.entries);
    return doc;
}

void save_operators(const std::string& path, const OperatorFile& file) {
    for (const BlockOperator& op : file.operators) require_conforms(file.algebra, op, "save_operators");
    write_text_atomic(path, operators_to_json(file).dump() + "\n");
}

void save_gram(const std::string& path, const GramFile& file) {
    if (file.gram.entries.rows() != file.gram.entries.cols())
        throw conformance_error("save_gram: matrix is not square");
    write_text_atomic(path, gram_to_json(file).dump() + "\n");
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw io_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

void write_csv(const std::string& path, const std::vector<std::string>& comment_lines,
               const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    for (const std::string& line : comment_lines) os << "# " << line << "\n";
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const std::vector<std::string>& row : rows) {
        if (row.size() != header.size()) throw conformance_error("write_csv: row width does not match header");
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    write_text_atomic(path, os.str());
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    const fs::path tmp = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw io_error("cannot open " + tmp.string() + " for writing");
        os << content;
        os.flush();
        if (!os) {
            std::error_code ignore;
            fs::remove(tmp, ignore);
            throw io_error("failed while writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ignore;
        fs::remove(tmp, ignore);
        throw io_error("cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

} // namespace corrlab
