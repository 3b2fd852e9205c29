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

#include "srmforge/signature.hpp"

#include <cctype>

namespace srmforge {
namespace {

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool valid_qualified(std::string_view s) {
    if (s.empty() || s.front() == '.' || s.back() == '.') return false;
    char prev = '.';
    for (char c : s) {
        if (c == '.') {
            if (prev == '.') return false;
        } else if (!is_ident_char(c)) {
            return false;
        }
        prev = c;
    }
    return true;
}

bool valid_type(std::string_view s) {
    while (s.size() >= 2 && s.substr(s.size() - 2) == "[]") s.remove_suffix(2);
    return valid_qualified(s);
}

} // namespace

std::string simple_name(std::string_view qualified) {
    auto dot = qualified.rfind('.');
    return std::string(dot == std::string_view::npos ? qualified : qualified.substr(dot + 1));
}

std::string MethodSignature::simple_owner() const { return simple_name(owner); }

std::string MethodSignature::str() const {
    std::string out = owner + "." + name + "(";
    for (std::size_t i = 0; i < parameter_types.size(); ++i) {
        if (i) out += ",";
        out += parameter_types[i];
    }
    return out + ")";
}

std::string erase_type(std::string_view type_text) {
    std::string out;
    int depth = 0;
    for (char c : type_text) {
        if (c == '<') {
            ++depth;
        } else if (c == '>') {
            --depth;
        } else if (depth == 0 && !std::isspace(static_cast<unsigned char>(c))) {
            out += c;
        }
    }
    if (out.size() >= 3 && out.compare(out.size() - 3, 3, "...") == 0) {
        out.resize(out.size() - 3);
        out += "[]";
    }
    return out;
}

std::optional<MethodSignature> parse_signature(std::string_view text, bool allow_wildcards) {
    auto open = text.find('(');
    if (open == std::string_view::npos || text.empty() || text.back() != ')') return std::nullopt;
    if (text.find('(', open + 1) != std::string_view::npos) return std::nullopt;
    auto head = text.substr(0, open);
    auto dot = head.rfind('.');
    if (dot == std::string_view::npos) return std::nullopt;

    MethodSignature sig;
    sig.owner = std::string(head.substr(0, dot));
    sig.name = std::string(head.substr(dot + 1));
    bool owner_ok = (allow_wildcards && sig.owner == "*") || valid_qualified(sig.owner);
    bool name_ok = sig.name == "<init>" || (valid_qualified(sig.name) && sig.name.find('.') == std::string::npos);
    if (!owner_ok || !name_ok) return std::nullopt;

    auto params = text.substr(open + 1, text.size() - open - 2);
    if (!params.empty()) {
        std::size_t start = 0;
        while (true) {
            auto comma = params.find(',', start);
            auto piece = params.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            if (!(allow_wildcards && piece == "?") && !valid_type(piece)) return std::nullopt;
            sig.parameter_types.emplace_back(piece);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    return sig;
}

} // namespace srmforge
