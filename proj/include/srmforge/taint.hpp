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
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "srmforge/labels.hpp"
#include "srmforge/program_model.hpp"
#include "srmforge/spec.hpp"

namespace srmforge::taint {

struct Location {
    std::string uri;
    int line = 0;
    friend auto operator<=>(const Location&, const Location&) = default;
};

struct Step {
    std::string uri;
    int line = 0;
    std::string description;
    friend bool operator==(const Step&, const Step&) = default;
};

struct Finding {
    std::string spec_id;
    Label cwe = Label::cwe89;
    Location source;
    Location sink;
    std::vector<Step> path; ///< starts at `source`, ends at `sink`
    std::string message;

    /// (source uri, source line, sink line, spec id): findings sharing a key are coalesced.
    std::tuple<std::string, int, int, std::string> key() const { return {source.uri, source.line, sink.line, spec_id}; }
    friend bool operator==(const Finding&, const Finding&) = default;
};

struct AnalysisConfig {
    int max_call_depth = 2; ///< 0 keeps the analysis intraprocedural
    /// exact honours each pattern's own mode; name_and_arity relaxes every pattern.
    spec::MatchMode match_mode = spec::MatchMode::exact;
    friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

/// Exact mode compares the resolved signature, falling back to name and arity for unresolved
/// calls. Constructor patterns additionally need the class simple name to equal the receiver hint.
bool match_pattern(const program::CallSite& c, const spec::MethodPattern& p);

struct AnalysisStats {
    int max_loop_iterations = 0; ///< largest fixed-point iteration count over all loops
    std::size_t statements = 0;  ///< statements in the analysed method, nested ones included
};

std::vector<Finding> analyze_method(const program::MethodModel& m, const std::vector<spec::TaintSpec>& specs,
                                    const program::ProgramModel& p, const AnalysisConfig& cfg = {},
                                    AnalysisStats* stats = nullptr);

/// Every method with a body, every spec. Sorted by key with duplicates coalesced.
std::vector<Finding> analyze_program(const program::ProgramModel& p, const std::vector<spec::TaintSpec>& specs,
                                     const AnalysisConfig& cfg = {});

nlohmann::ordered_json to_json(const Finding& f);
nlohmann::ordered_json to_json(const std::vector<Finding>& findings);
nlohmann::ordered_json to_json(const AnalysisConfig& c);
AnalysisConfig analysis_config_from_json(const nlohmann::json& j);

} // namespace srmforge::taint
