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

#include "srmforge/labels.hpp"

#include <algorithm>

namespace srmforge {

std::optional<Label> parse_label(std::string_view id) {
    for (std::size_t i = 0; i < kLabelCount; ++i) {
        if (kLabelIds[i] == id) return static_cast<Label>(i);
    }
    return std::nullopt;
}

std::string cwe_rule_id(Label cwe) {
    auto id = label_id(cwe);
    return "CWE-" + std::string(id.substr(3));
}

std::string_view cwe_title(Label cwe) {
    switch (cwe) {
    case Label::cwe78: return "OS Command Injection";
    case Label::cwe79: return "Cross-site Scripting";
    case Label::cwe89: return "SQL Injection";
    case Label::cwe306: return "Missing Authentication";
    case Label::cwe601: return "Open Redirect";
    case Label::cwe862: return "Missing Authorization";
    case Label::cwe863: return "Incorrect Authorization";
    default: return "";
    }
}

bool LabelSet::has_cwe() const {
    return std::any_of(kCweLabels.begin(), kCweLabels.end(), [this](Label l) { return has(l); });
}

std::string LabelSet::key() const {
    std::string out(kLabelCount, '0');
    for (std::size_t i = 0; i < kLabelCount; ++i) {
        if (bits_.test(i)) out[i] = '1';
    }
    return out;
}

std::vector<std::string> LabelSet::ids() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < kLabelCount; ++i) {
        if (bits_.test(i)) out.emplace_back(kLabelIds[i]);
    }
    return out;
}

std::string to_string(const LabelSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& id : s.ids()) {
        if (!first) out += ",";
        out += id;
        first = false;
    }
    return out + "}";
}

} // namespace srmforge
