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

#include <string>
#include <vector>

#include "json.hpp"
#include "srmforge/taint.hpp"

#ifndef SRMFORGE_VERSION
#define SRMFORGE_VERSION "0.0.0"
#endif

namespace srmforge::sarif {

inline constexpr const char* kSarifVersion = "2.1.0";
inline constexpr const char* kSarifSchema = "https://json.schemastore.org/sarif-2.1.0.json";

struct ToolMeta {
    std::string name = "srm-forge";
    std::string version = SRMFORGE_VERSION;
    std::string information_uri;
};

/// One run; one rule per CWE in use; one result per finding with the sink as primary location
/// and the finding path as a single thread flow.
nlohmann::ordered_json sarif_document(const std::vector<taint::Finding>& findings, const ToolMeta& meta = {});
/// Two-space indented text with a trailing newline.
std::string emit_sarif(const std::vector<taint::Finding>& findings, const ToolMeta& meta = {});

/// Structural checks on the required subset (version, driver name, results with ruleId, message
/// and locations, rule references, 1-based lines). Empty means valid.
std::vector<std::string> validate_sarif(const nlohmann::json& doc);

} // namespace srmforge::sarif
