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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "srmforge/dataset.hpp"
#include "srmforge/labels.hpp"
#include "srmforge/signature.hpp"

namespace srmforge::spec {

enum class MatchMode { exact, name_and_arity };

std::string_view to_string(MatchMode m);
std::optional<MatchMode> parse_match_mode(std::string_view s);

struct MethodPattern {
    std::string signature; ///< canonical text; wildcards only in name_and_arity mode
    MatchMode match_mode = MatchMode::exact;

    /// Throws FormatError when the signature does not parse.
    MethodSignature parsed() const;
    friend bool operator==(const MethodPattern&, const MethodPattern&) = default;
};

using FlowOut = dataset::DataOut;

struct SourceSpec {
    MethodPattern pattern;
    FlowOut out = FlowOut::return_value();
    friend bool operator==(const SourceSpec&, const SourceSpec&) = default;
};

struct SinkSpec {
    MethodPattern pattern;
    std::vector<int> in;
    friend bool operator==(const SinkSpec&, const SinkSpec&) = default;
};

/// Sanitizers and propagators: taint moves from `in` to `out`, cleaned or not.
struct TransferSpec {
    MethodPattern pattern;
    std::vector<int> in;
    FlowOut out = FlowOut::return_value();
    friend bool operator==(const TransferSpec&, const TransferSpec&) = default;
};

struct TaintSpec {
    std::string id;
    Label cwe = Label::cwe89;
    std::vector<SourceSpec> sources;
    std::vector<SinkSpec> sinks;
    std::vector<TransferSpec> sanitizers;
    std::vector<TransferSpec> propagators;
    std::string message;
    friend bool operator==(const TaintSpec&, const TaintSpec&) = default;
};

struct SpecFile {
    std::string version = "1";
    std::vector<TaintSpec> specs;
    friend bool operator==(const SpecFile&, const SpecFile&) = default;
};

struct GenerateResult {
    std::vector<TaintSpec> specs; ///< sorted by cwe id
    std::vector<std::string> diagnostics;
};

/// One spec per requested CWE (default all seven). CWE-specific sources and sinks are used when
/// present; otherwise records carrying the bare role with no CWE bit stand in.
GenerateResult generate_specs(const dataset::Dataset& d, const std::optional<std::vector<Label>>& cwes = std::nullopt);

/// Invariant violations; empty means valid.
std::vector<std::string> validate_spec(const TaintSpec& s);
/// Suspicious but legal: the same pattern in two roles.
std::vector<std::string> spec_warnings(const TaintSpec& s);

nlohmann::ordered_json to_json(const TaintSpec& s);
TaintSpec spec_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::ordered_json to_json(const SpecFile& f);
/// Throws FormatError on malformed documents or specs failing validate_spec.
SpecFile load_specs(std::string_view document);
SpecFile load_specs_file(const std::string& path);
std::string save_specs(const SpecFile& f);

} // namespace srmforge::spec
