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

#include "java_lexer.hpp"

#include <array>
#include <cctype>

#include "srmforge/error.hpp"

namespace srmforge::program::detail {
namespace {

constexpr std::array<std::string_view, 40> kKeywords = {
    "abstract", "assert", "break", "case", "catch", "class", "continue", "default", "do", "else",
    "enum", "extends", "final", "finally", "for", "if", "implements", "import", "instanceof", "interface",
    "native", "new", "package", "private", "protected", "public", "return", "static", "super", "switch",
    "synchronized", "this", "throw", "throws", "transient", "try", "volatile", "while", "true", "false",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool ident_part(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }

} // namespace

bool is_keyword(std::string_view word) {
    if (word == "null") return true;
    for (auto k : kKeywords) {
        if (k == word) return true;
    }
    return false;
}

LexResult lex(std::string_view src, std::string_view uri) {
    LexResult out;
    std::size_t i = 0;
    int line = 1;
    std::size_t line_start = 0;

    auto push = [&](TokenKind kind, std::size_t begin, std::size_t end, int tok_line, int col) {
        out.tokens.push_back({kind, std::string(src.substr(begin, end - begin)), tok_line, col});
        for (int l = tok_line; l <= line; ++l) out.code_lines.insert(l);
    };
    auto fail = [&](std::string expected) {
        throw SyntaxError(std::string(uri), line, static_cast<int>(i - line_start) + 1, std::move(expected));
    };

    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            line_start = ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
            i += 2;
            while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) {
                if (src[i] == '\n') {
                    ++line;
                    line_start = i + 1;
                }
                ++i;
            }
            if (i + 1 >= src.size()) fail("end of block comment");
            i += 2;
            continue;
        }

        int col = static_cast<int>(i - line_start) + 1;
        int tok_line = line;
        std::size_t begin = i;
        if (ident_start(c)) {
            while (i < src.size() && ident_part(src[i])) ++i;
            push(TokenKind::identifier, begin, i, tok_line, col);
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '.' || src[i] == '_' ||
                                      ((src[i] == '+' || src[i] == '-') && (src[i - 1] == 'e' || src[i - 1] == 'E')))) {
                ++i;
            }
            push(TokenKind::number, begin, i, tok_line, col);
        } else if (c == '"' || c == '\'') {
            if (c == '"' && src.substr(i, 3) == "\"\"\"") fail("string literal (text blocks are not supported)");
            ++i;
            while (i < src.size() && src[i] != c) {
                if (src[i] == '\\') ++i;
                if (i < src.size() && src[i] == '\n') fail("closing quote");
                ++i;
            }
            if (i >= src.size()) fail("closing quote");
            ++i;
            push(c == '"' ? TokenKind::string : TokenKind::character, begin, i, tok_line, col);
        } else if (c == '@' && i + 1 < src.size() && ident_start(src[i + 1])) {
            // annotations are kept as a single '@' token; the parser skips them
            ++i;
            push(TokenKind::punct, begin, i, tok_line, col);
        } else if (std::string_view("{}()[];,.=+-*/%<>!~?:&|^@").find(c) != std::string_view::npos) {
            if (c == '.' && src.substr(i, 3) == "...") {
                i += 3;
            } else if (c == ':' && i + 1 < src.size() && src[i + 1] == ':') {
                i += 2;
            } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
                i += 2;
            } else {
                ++i;
            }
            push(TokenKind::punct, begin, i, tok_line, col);
        } else {
            fail("a token");
        }
    }
    out.tokens.push_back({TokenKind::end, "", line, static_cast<int>(i - line_start) + 1});
    return out;
}

} // namespace srmforge::program::detail
