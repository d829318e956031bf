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

#include <string>
#include <vector>

#include <json.hpp>

#include "corrlab/gram.hpp"

namespace corrlab {

/**
 * File formats. Two JSON schemas cover all operator data:
 *
 *   operator file:  { "algebra": { "blocks": [ {"dim": d, "weight": w}, ... ] },
 *                     "operators": [ [ <block matrix>, ... ], ... ], ... }
 *   gram file:      { "n": n, "entries": [ [re, im] × n² row-major ], ... }
 *
 * where a block matrix is a row-major array of [re, im] pairs of length d².
 * Any additional top-level keys (conventionally "meta", carrying the
 * producing command's resolved configuration) are preserved on load and
 * re-emitted verbatim on save, so save(load(f)) is byte-identical for files
 * this tool wrote: nlohmann::json orders keys canonically and prints doubles
 * in shortest round-trip form.
 *
 * All writers are atomic (temp file in the target directory + rename).
 */

struct OperatorFile {
    TracialAlgebra algebra = TracialAlgebra::single_block(1);
    std::vector<BlockOperator> operators;
    /// Top-level keys other than "algebra"/"operators", preserved verbatim.
    nlohmann::json extra = nlohmann::json::object();
};

struct GramFile {
    GramMatrix gram;
    /// Top-level keys other than "n"/"entries", preserved verbatim.
    nlohmann::json extra = nlohmann::json::object();
};

/// Throws io_error when the file cannot be read or is not JSON, and
/// validation_error when the schema or the algebra invariants are violated.
OperatorFile load_operators(const std::string& path);
GramFile load_gram(const std::string& path);

void save_operators(const std::string& path, const OperatorFile& file);
void save_gram(const std::string& path, const GramFile& file);

/// JSON bodies used by the savers (exposed for tests and stdout reports).
nlohmann::json operators_to_json(const OperatorFile& file);
nlohmann::json gram_to_json(const GramFile& file);

/// Shortest decimal string that parses back to exactly x ("canonical float
/// formatting"); NaN and infinities print as nan/inf/-inf.
std::string format_double(double x);

/// Writes `# `-prefixed comment lines, one header row, then data rows with
/// format_double for floating-point cells. Atomic like the JSON writers.
void write_csv(const std::string& path, const std::vector<std::string>& comment_lines,
               const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

/// Writes text atomically (temp file + rename).
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace corrlab
