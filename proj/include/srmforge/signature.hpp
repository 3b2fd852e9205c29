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

namespace srmforge {

/// Parsed form of a canonical method signature `package.Class.method(T1,T2)`.
///
/// Constructors use the method name `<init>`. Parameter types are erased to their
/// raw names (no generic arguments) with array suffixes kept, so the text never
/// contains whitespace and commas only ever separate parameters.
struct MethodSignature {
    std::string owner; ///< fully qualified class, or "*" in wildcard patterns
    std::string name;
    std::vector<std::string> parameter_types; ///< "?" is a wildcard in patterns

    std::size_t arity() const noexcept { return parameter_types.size(); }
    std::string simple_owner() const;
    std::string str() const;

    friend bool operator==(const MethodSignature&, const MethodSignature&) = default;
};

/// Returns nullopt when `text` is not a well-formed signature. Wildcards (`*` owner,
/// `?` parameter) are accepted only when `allow_wildcards` is set.
std::optional<MethodSignature> parse_signature(std::string_view text, bool allow_wildcards = false);

/// Strips generic arguments and whitespace; varargs become arrays.
std::string erase_type(std::string_view type_text);

/// Last dot-separated component.
std::string simple_name(std::string_view qualified);

} // namespace srmforge
