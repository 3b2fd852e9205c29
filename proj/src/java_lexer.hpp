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

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace srmforge::program::detail {

enum class TokenKind { identifier, number, string, character, punct, end };

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;
    int line = 0;
    int column = 0;

    bool is(std::string_view t) const { return (kind == TokenKind::punct || kind == TokenKind::identifier) && text == t; }
    bool is_ident() const { return kind == TokenKind::identifier; }
};

struct LexResult {
    std::vector<Token> tokens; ///< always terminated by an `end` token
    std::set<int> code_lines;  ///< lines holding at least one token
};

/// Splits Java source into tokens. Comments and whitespace are dropped. Every
/// punctuation character is its own token, so `>>` arrives as two `>` tokens.
LexResult lex(std::string_view content, std::string_view uri);

bool is_keyword(std::string_view word);

} // namespace srmforge::program::detail
