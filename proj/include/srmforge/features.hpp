// Copyright 2026 The srm-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srmforge/labels.hpp"
#include "srmforge/program_model.hpp"
#include "srmforge/signature.hpp"

namespace srmforge::features {

inline constexpr std::size_t kNumericCount = 13;
inline constexpr std::size_t kBinaryCount = 99;
inline constexpr std::size_t kCategoricalCount = 7;
inline constexpr std::size_t kFeatureCount = kNumericCount + kBinaryCount + kCategoricalCount;

enum class FeatureKind { numeric, binary, categorical };

std::string_view to_string(FeatureKind k);

struct FeatureEntry {
    std::string id;
    FeatureKind kind = FeatureKind::numeric;
    std::vector<std::string> categories; ///< categorical only
    bool extension = false;              ///< numeric cells added beyond the classic structural counts

    friend bool operator==(const FeatureEntry&, const FeatureEntry&) = default;
};

enum class TokenScope { method_name, class_name, invoked_names, parameter_types, return_type };

std::string_view to_string(TokenScope s);
std::optional<TokenScope> parse_scope(std::string_view s);

struct TokenGroup {
    std::string id; ///< binary feature id
    std::string token;
    std::vector<TokenScope> scopes;

    friend bool operator==(const TokenGroup&, const TokenGroup&) = default;
};

struct TokenTable {
    std::string schema_version;
    std::vector<TokenGroup> groups;

    friend bool operator==(const TokenTable&, const TokenTable&) = default;
};

/// Parses the JSON token table. Throws FormatError on a malformed or non-99-entry table.
TokenTable parse_token_table(std::string_view json_text, const std::string& path = "<tokens>");
TokenTable load_token_table(const std::string& path);
/// The table shipped in data/tokens.json, compiled into the library.
const TokenTable& default_token_table();

struct FeatureSchema {
    std::string version; ///< "features-1/" + token table version
    std::vector<FeatureEntry> entries;

    std::size_t size() const noexcept { return entries.size(); }
    std::optional<std::size_t> find(std::string_view id) const;
    std::size_t count(FeatureKind k) const;

    friend bool operator==(const FeatureSchema&, const FeatureSchema&) = default;
};

/// 13 numeric entries, one binary entry per token group, then 7 categorical entries.
FeatureSchema make_schema(const TokenTable& tokens);
const FeatureSchema& default_schema();

struct FeatureVector {
    std::string schema_version;
    std::vector<double> values; ///< categorical cells hold the category index

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Throws SchemaMismatch when `v` does not fit `schema`.
void check_vector(const FeatureVector& v, const FeatureSchema& schema);

/// Case-insensitive substring test.
bool token_match(std::string_view signature_part, std::string_view token);

/// Splits `HttpServletRequest` into Http, Servlet, Request; runs of capitals stay together.
std::vector<std::string> camel_split(std::string_view name);

std::vector<double> structural_counts(const program::MethodModel& m, const program::ProgramModel& p);

FeatureVector extract_features(const program::MethodModel& m, const program::ProgramModel& p,
                               const FeatureSchema& schema = default_schema(),
                               const TokenTable& tokens = default_token_table());

/// A one-class, one-method program standing in for a library method known only by signature.
/// The method has no body, public visibility and an empty return type (constructors get `void`).
program::ProgramModel stub_program(const MethodSignature& sig);

} // namespace srmforge::features
