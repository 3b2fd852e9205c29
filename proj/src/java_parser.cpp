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

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

#include "java_lexer.hpp"
#include "srmforge/error.hpp"
#include "srmforge/program_model.hpp"
#include "srmforge/signature.hpp"

namespace srmforge::program {
namespace {

using detail::Token;
using detail::TokenKind;

constexpr std::array<std::string_view, 35> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=",   "-=",  "*=",  "/=",  "%=", "&=", "|=", "^=", "<<", ">>", "=",  "+",
    "-",    "*",   "/",   "%",   "<",  ">",  "!",  "&",  "|",  "^",  "~",
};

constexpr std::array<std::string_view, 12> kAssignOps = {
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=",
};

constexpr std::array<std::string_view, 8> kPrimitives = {
    "int", "long", "short", "byte", "char", "boolean", "float", "double",
};

bool is_primitive(std::string_view t) {
    return std::find(kPrimitives.begin(), kPrimitives.end(), t) != kPrimitives.end();
}

bool is_assign_op(std::string_view op) {
    return std::find(kAssignOps.begin(), kAssignOps.end(), op) != kAssignOps.end();
}

bool starts_upper(std::string_view s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s.front())); }

void add_unique(std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

void add_all(std::vector<std::string>& v, const std::vector<std::string>& more) {
    for (const auto& s : more) add_unique(v, s);
}

/// Result of lowering an expression: either a plain local, a literal, a non-local
/// name, or a composite value that depends on `uses`.
struct Value {
    std::optional<std::string> var;
    std::vector<std::string> uses;
    bool literal = false;
    bool string_literal = false;
    bool has_string = false; ///< a `+` chain involving a string literal
    bool effect = false;     ///< assignment or increment already emitted
    std::optional<std::string> text;
    std::optional<std::string> type_hint;
    std::optional<std::size_t> call_stmt; ///< the value is exactly the result of out[call_stmt]

    bool stringish() const { return string_literal || has_string; }
};

Value composite(std::vector<std::string> uses) {
    Value v;
    v.uses = std::move(uses);
    return v;
}

class Parser {
public:
    Parser(std::string_view uri, detail::LexResult lexed)
        : uri_(uri), toks_(std::move(lexed.tokens)), code_lines_(std::move(lexed.code_lines)) {}

    std::vector<ClassModel> parse_unit() {
        std::vector<ClassModel> classes;
        if (accept("package")) {
            package_ = parse_qualified_name();
            expect(";", "';' after package name");
        }
        while (peek().is("import")) {
            while (!peek().is(";")) {
                if (peek().kind == TokenKind::end) fail(peek(), "';' after import");
                next();
            }
            next();
        }
        while (peek().kind != TokenKind::end) {
            if (accept(";")) continue;
            int start = peek().line;
            Modifiers mods = parse_modifiers();
            if (peek().is("class") || peek().is("interface")) {
                classes.push_back(parse_class(mods, start));
            } else {
                fail(peek(), "class or interface declaration");
            }
        }
        return classes;
    }

private:
    struct MethodContext {
        std::map<std::string, std::string> locals;
        int temps = 0;
    };

    // ---- token plumbing -------------------------------------------------

    const Token& peek(std::size_t k = 0) const {
        std::size_t i = std::min(pos_ + k, toks_.size() - 1);
        return toks_[i];
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool accept(std::string_view text) {
        if (peek().is(text)) {
            next();
            return true;
        }
        return false;
    }
    const Token& expect(std::string_view text, std::string what) {
        if (!peek().is(text)) fail(peek(), std::move(what));
        return next();
    }
    std::string expect_ident(std::string what) {
        if (!peek().is_ident() || detail::is_keyword(peek().text)) fail(peek(), std::move(what));
        return next().text;
    }
    [[noreturn]] void fail(const Token& t, std::string expected) const {
        throw SyntaxError(std::string(uri_), t.line, t.column, std::move(expected));
    }

    bool adjacent(std::size_t a, std::size_t b) const {
        const Token& x = peek(a);
        const Token& y = peek(b);
        return x.kind == TokenKind::punct && y.kind == TokenKind::punct && x.line == y.line &&
               y.column == x.column + static_cast<int>(x.text.size());
    }

    /// Longest operator spelled by the adjacent punctuation at the cursor, without consuming it.
    std::pair<std::string, std::size_t> peek_operator() const {
        if (peek().kind != TokenKind::punct) return {"", 0};
        std::string glued = peek().text;
        std::size_t n = 1;
        while (n < 4 && adjacent(n - 1, n) && std::string_view("=+-*/%<>!&|^~").find(peek(n).text[0]) != std::string_view::npos &&
               peek(n).text.size() == 1) {
            glued += peek(n).text;
            ++n;
        }
        for (auto op : kOperators) {
            if (op.size() <= glued.size() && glued.compare(0, op.size(), op) == 0) return {std::string(op), op.size()};
        }
        return {"", 0};
    }

    std::string take_operator() {
        auto [op, n] = peek_operator();
        for (std::size_t i = 0; i < n; ++i) next();
        return op;
    }

    std::size_t count_lines(int from, int to) const {
        auto lo = code_lines_.lower_bound(from);
        auto hi = code_lines_.upper_bound(to);
        return static_cast<std::size_t>(std::distance(lo, hi));
    }

    void skip_balanced(std::string_view open, std::string_view close) {
        int depth = 0;
        do {
            if (peek().kind == TokenKind::end) fail(peek(), "'" + std::string(close) + "'");
            if (peek().is(open)) ++depth;
            if (peek().is(close)) --depth;
            next();
        } while (depth > 0);
    }

    /// Skips a balanced region, collecting every known local that is mentioned.
    void collect_balanced(std::string_view open, std::string_view close, std::vector<std::string>& uses) {
        int depth = 0;
        do {
            if (peek().kind == TokenKind::end) fail(peek(), "'" + std::string(close) + "'");
            if (peek().is(open)) ++depth;
            if (peek().is(close)) --depth;
            note_local(uses);
            next();
        } while (depth > 0);
    }

    void note_local(std::vector<std::string>& uses) const {
        const Token& t = peek();
        bool after_dot = pos_ > 0 && toks_[pos_ - 1].is(".");
        if (t.is_ident() && !after_dot && ctx_.locals.count(t.text)) add_unique(uses, t.text);
    }

    // ---- declarations ----------------------------------------------------

    std::string parse_qualified_name() {
        std::string name = expect_ident("identifier");
        while (peek().is(".") && peek(1).is_ident()) {
            next();
            name += "." + next().text;
        }
        if (peek().is(".") && peek(1).is("*")) {
            next();
            next();
            name += ".*";
        }
        return name;
    }

    void skip_annotation() {
        expect("@", "annotation");
        parse_qualified_name();
        if (peek().is("(")) skip_balanced("(", ")");
    }

    Modifiers parse_modifiers() {
        Modifiers mods;
        while (true) {
            const Token& t = peek();
            if (t.is("@")) {
                if (peek(1).is("interface")) fail(peek(1), "class or interface (annotation types are not supported)");
                skip_annotation();
            } else if (t.is("public")) {
                next(), mods.add(Modifier::public_);
            } else if (t.is("private")) {
                next(), mods.add(Modifier::private_);
            } else if (t.is("protected")) {
                next(), mods.add(Modifier::protected_);
            } else if (t.is("static")) {
                if (peek(1).is("{")) break;
                next(), mods.add(Modifier::static_);
            } else if (t.is("final")) {
                next(), mods.add(Modifier::final_);
            } else if (t.is("abstract")) {
                next(), mods.add(Modifier::abstract_);
            } else if (t.is("native") || t.is("synchronized") || t.is("transient") || t.is("volatile") ||
                       t.is("strictfp") || (t.is("default") && !peek(1).is(":"))) {
                next();
            } else {
                break;
            }
        }
        return mods;
    }

    /// Parses a type and returns its erased text (generic arguments dropped, arrays kept).
    std::string parse_type() {
        if (!peek().is_ident() || (detail::is_keyword(peek().text))) fail(peek(), "type");
        std::string raw = next().text;
        while (true) {
            if (peek().is("<")) {
                skip_angle();
            } else if (peek().is(".") && peek(1).is_ident() && !detail::is_keyword(peek(1).text)) {
                next();
                raw += "." + next().text;
            } else {
                break;
            }
        }
        while (peek().is("[") && peek(1).is("]")) {
            next();
            next();
            raw += "[]";
        }
        if (accept("...")) raw += "[]";
        return erase_type(raw);
    }

    void skip_angle() {
        int depth = 0;
        do {
            const Token& t = peek();
            if (t.kind == TokenKind::end || t.is(";") || t.is("{") || t.is("(")) fail(t, "'>'");
            if (t.is("<")) ++depth;
            if (t.is(">")) --depth;
            next();
        } while (depth > 0);
    }

    /// Speculative: a type followed by an identifier and one of `follow`.
    bool looks_like_declaration(std::string_view follow = "=;,:[") {
        std::size_t save = pos_;
        bool ok = false;
        try {
            if (peek().is_ident() && !detail::is_keyword(peek().text)) {
                parse_type();
                ok = peek().is_ident() && !detail::is_keyword(peek().text) && peek(1).kind == TokenKind::punct &&
                     peek(1).text.size() == 1 && follow.find(peek(1).text[0]) != std::string_view::npos;
                if (ok && peek(1).is("=") && adjacent(1, 2) && peek(2).is("=")) ok = false;
            }
        } catch (const SyntaxError&) {
            ok = false;
        }
        pos_ = save;
        return ok;
    }

    ClassModel parse_class(Modifiers mods, int start_line) {
        ClassModel cls;
        cls.is_interface = next().is("interface");
        cls.package = package_;
        cls.modifiers = mods;
        cls.uri = std::string(uri_);
        cls.name = expect_ident("class name");
        if (peek().is("<")) skip_angle();
        while (!peek().is("{")) {
            if (peek().kind == TokenKind::end) fail(peek(), "'{'");
            if (peek().is("<")) {
                skip_angle();
            } else {
                next();
            }
        }
        next();
        current_class_ = &cls;
        while (!peek().is("}")) {
            if (peek().kind == TokenKind::end) fail(peek(), "'}'");
            parse_member(cls);
        }
        int end_line = next().line;
        current_class_ = nullptr;
        cls.line_span = {start_line, end_line};
        cls.loc = static_cast<int>(count_lines(start_line, end_line));
        return cls;
    }

    void parse_member(ClassModel& cls) {
        if (accept(";")) return;
        if (peek().is("{")) {
            skip_balanced("{", "}");
            return;
        }
        int start = peek().line;
        Modifiers mods = parse_modifiers();
        if (peek().is("{")) {
            skip_balanced("{", "}");
            return;
        }
        if (peek().is("class") || peek().is("interface") || peek().is("enum") || peek().is("record")) {
            fail(peek(), "member declaration (nested types are not supported)");
        }
        if (peek().is("<")) skip_angle();

        MethodModel m;
        m.owner = cls.qualified_name();
        m.uri = std::string(uri_);
        m.modifiers = mods;
        if (peek().is(cls.name) && peek(1).is("(")) {
            next();
            m.name = "<init>";
            m.return_type = "void";
        } else {
            std::string type = parse_type();
            std::string name = expect_ident("member name");
            if (!peek().is("(")) {
                parse_fields(cls, type, name);
                return;
            }
            m.name = name;
            m.return_type = type;
        }
        if (cls.is_interface) {
            m.modifiers.add(Modifier::public_);
        }

        ctx_ = MethodContext{};
        expect("(", "'('");
        while (!peek().is(")")) {
            while (peek().is("final") || peek().is("@")) {
                if (peek().is("@")) {
                    skip_annotation();
                } else {
                    next();
                }
            }
            Parameter p;
            p.type = parse_type();
            const Token& name_tok = peek();
            p.name = expect_ident("parameter name");
            while (peek().is("[") && peek(1).is("]")) {
                next(), next();
                p.type += "[]";
            }
            for (const auto& other : m.parameters) {
                if (other.name == p.name) fail(name_tok, "unique parameter name");
            }
            ctx_.locals[p.name] = p.type;
            m.parameters.push_back(std::move(p));
            if (!accept(",")) break;
        }
        expect(")", "')'");
        while (peek().is("[") && peek(1).is("]")) next(), next();
        if (accept("throws")) {
            parse_type();
            while (accept(",")) parse_type();
        }
        if (peek().is("{")) {
            m.has_body = true;
            parse_block(m.body);
            m.line_span = {start, toks_[pos_ - 1].line};
        } else {
            const Token& semi = expect(";", "method body or ';'");
            m.has_body = false;
            if (cls.is_interface) m.modifiers.add(Modifier::abstract_);
            m.line_span = {start, semi.line};
        }
        m.code_lines = static_cast<int>(count_lines(m.line_span.start, m.line_span.end));

        auto key = canonical_signature(m);
        for (const auto& other : cls.methods) {
            if (canonical_signature(other) == key) fail(peek(), "unique method signature (duplicate " + key + ")");
        }
        cls.methods.push_back(std::move(m));
    }

    void parse_fields(ClassModel& cls, std::string type, std::string name) {
        while (true) {
            std::string t = type;
            while (peek().is("[") && peek(1).is("]")) {
                next(), next();
                t += "[]";
            }
            cls.fields.push_back({name, t});
            if (accept("=")) {
                int depth = 0;
                while (depth > 0 || !(peek().is(",") || peek().is(";"))) {
                    if (peek().kind == TokenKind::end) fail(peek(), "';'");
                    if (peek().is("(") || peek().is("{") || peek().is("[")) ++depth;
                    if (peek().is(")") || peek().is("}") || peek().is("]")) --depth;
                    next();
                }
            }
            if (accept(",")) {
                name = expect_ident("field name");
                continue;
            }
            expect(";", "';' after field declaration");
            return;
        }
    }

    std::optional<std::string> field_type(const std::string& name) const {
        if (!current_class_) return std::nullopt;
        for (const auto& f : current_class_->fields) {
            if (f.name == name) return f.type;
        }
        return std::nullopt;
    }

    // ---- statements ------------------------------------------------------

    Statement make(StatementKind kind) const {
        Statement s;
        s.kind = kind;
        s.line = line_;
        return s;
    }

    void parse_block(std::vector<Statement>& out) {
        expect("{", "'{'");
        while (!peek().is("}")) {
            if (peek().kind == TokenKind::end) fail(peek(), "'}'");
            parse_statement(out);
        }
        next();
    }

    void parse_body(std::vector<Statement>& out) {
        if (peek().is("{")) {
            parse_block(out);
        } else {
            parse_statement(out);
        }
    }

    void parse_statement(std::vector<Statement>& out) {
        const Token& t = peek();
        line_ = t.line;
        if (t.is("{")) {
            parse_block(out);
        } else if (t.is(";")) {
            next();
        } else if (t.is("if")) {
            parse_if(out);
        } else if (t.is("while")) {
            next();
            expect("(", "'(' after while");
            Value cond = parse_expression(out);
            expect(")", "')'");
            Statement s = make(StatementKind::loop);
            s.uses = cond.uses;
            parse_body(s.children);
            out.push_back(std::move(s));
        } else if (t.is("do")) {
            next();
            Statement s = make(StatementKind::loop);
            parse_body(s.children);
            line_ = expect("while", "'while' after do body").line;
            expect("(", "'('");
            std::vector<Statement> pre;
            Value cond = parse_expression(pre);
            expect(")", "')'");
            expect(";", "';'");
            s.uses = cond.uses;
            out.insert(out.end(), std::make_move_iterator(pre.begin()), std::make_move_iterator(pre.end()));
            out.push_back(std::move(s));
        } else if (t.is("for")) {
            parse_for(out);
        } else if (t.is("try")) {
            parse_try(out);
        } else if (t.is("return")) {
            next();
            Statement s = make(StatementKind::return_);
            if (!peek().is(";")) s.uses = parse_expression(out).uses;
            expect(";", "';' after return");
            out.push_back(std::move(s));
        } else if (t.is("throw")) {
            next();
            Value v = parse_expression(out);
            expect(";", "';' after throw");
            Statement s = make(StatementKind::opaque);
            s.uses = v.uses;
            s.defs = v.uses;
            out.push_back(std::move(s));
        } else if (t.is("break") || t.is("continue")) {
            while (!peek().is(";")) {
                if (peek().kind == TokenKind::end) fail(peek(), "';'");
                next();
            }
            next();
        } else if (t.is("switch")) {
            next();
            Statement s = make(StatementKind::opaque);
            collect_balanced("(", ")", s.uses);
            collect_balanced("{", "}", s.uses);
            s.defs = s.uses;
            out.push_back(std::move(s));
        } else if (t.is("assert")) {
            next();
            Statement s = make(StatementKind::opaque);
            int depth = 0;
            while (depth > 0 || !peek().is(";")) {
                if (peek().kind == TokenKind::end) fail(peek(), "';'");
                if (peek().is("(") || peek().is("{")) ++depth;
                if (peek().is(")") || peek().is("}")) --depth;
                note_local(s.uses);
                next();
            }
            next();
            s.defs = s.uses;
            out.push_back(std::move(s));
        } else if (t.is("synchronized")) {
            next();
            expect("(", "'('");
            parse_expression(out);
            expect(")", "')'");
            parse_block(out);
        } else if (t.is("class") || t.is("interface") || t.is("enum")) {
            fail(t, "statement (local type declarations are not supported)");
        } else if (t.is_ident() && !detail::is_keyword(t.text) && peek(1).is(":") && !adjacent(1, 2)) {
            next();
            next();
            parse_statement(out);
        } else if (t.is("final") || t.is("@") || looks_like_declaration()) {
            parse_local_declaration(out);
            expect(";", "';' after declaration");
        } else {
            parse_expression_statement(out);
            expect(";", "';' after expression");
        }
    }

    void parse_if(std::vector<Statement>& out) {
        line_ = next().line;
        int line = line_;
        expect("(", "'(' after if");
        Value cond = parse_expression(out);
        expect(")", "')'");
        Statement s = make(StatementKind::if_);
        s.line = line;
        s.uses = cond.uses;
        parse_body(s.children);
        if (accept("else")) parse_body(s.else_children);
        out.push_back(std::move(s));
    }

    void parse_for(std::vector<Statement>& out) {
        int line = next().line;
        expect("(", "'(' after for");
        std::size_t save = pos_;
        while (peek().is("final") || peek().is("@")) {
            if (peek().is("@")) {
                skip_annotation();
            } else {
                next();
            }
        }
        if (looks_like_declaration(":")) {
            std::string type = parse_type();
            std::string var = expect_ident("loop variable");
            expect(":", "':'");
            Value iter = parse_expression(out);
            expect(")", "')'");
            Statement s = make(StatementKind::loop);
            s.line = line;
            s.uses = iter.uses;
            Statement decl = make(StatementKind::declaration);
            decl.line = line;
            decl.defs = {var};
            decl.uses = iter.uses;
            decl.declared_type = type;
            ctx_.locals[var] = type;
            s.children.push_back(std::move(decl));
            parse_body(s.children);
            out.push_back(std::move(s));
            return;
        }
        pos_ = save;
        if (!peek().is(";")) {
            if (peek().is("final") || looks_like_declaration()) {
                parse_local_declaration(out);
            } else {
                parse_expression_statement(out);
                while (accept(",")) parse_expression_statement(out);
            }
        }
        expect(";", "';' in for header");
        Statement s = make(StatementKind::loop);
        s.line = line;
        if (!peek().is(";")) s.uses = parse_expression(out).uses;
        expect(";", "';' in for header");
        std::vector<Statement> update;
        if (!peek().is(")")) {
            parse_expression_statement(update);
            while (accept(",")) parse_expression_statement(update);
        }
        expect(")", "')'");
        parse_body(s.children);
        s.line = line;
        for (auto& u : update) u.line = line;
        s.children.insert(s.children.end(), std::make_move_iterator(update.begin()),
                          std::make_move_iterator(update.end()));
        out.push_back(std::move(s));
    }

    void parse_try(std::vector<Statement>& out) {
        int line = next().line;
        Statement s = make(StatementKind::try_catch);
        s.line = line;
        bool resources = false;
        if (accept("(")) {
            resources = true;
            while (!peek().is(")")) {
                line_ = peek().line;
                if (peek().is("final") || looks_like_declaration()) {
                    parse_local_declaration(s.children);
                } else {
                    parse_expression(s.children);
                }
                if (!accept(";")) break;
            }
            expect(")", "')' after resources");
        }
        parse_block(s.children);
        while (peek().is("catch")) {
            CatchClause c;
            c.line = next().line;
            expect("(", "'(' after catch");
            while (peek().is("final") || peek().is("@")) {
                if (peek().is("@")) {
                    skip_annotation();
                } else {
                    next();
                }
            }
            c.exception_type = parse_type();
            while (accept("|")) c.exception_type += "|" + parse_type();
            c.variable = expect_ident("catch variable");
            expect(")", "')'");
            ctx_.locals[c.variable] = c.exception_type;
            parse_block(c.body);
            s.handlers.push_back(std::move(c));
        }
        bool has_finally = false;
        if (accept("finally")) {
            has_finally = true;
            parse_block(s.finally_children);
        }
        if (s.handlers.empty() && !has_finally && !resources) fail(peek(), "catch or finally");
        out.push_back(std::move(s));
    }

    void parse_local_declaration(std::vector<Statement>& out) {
        while (peek().is("final") || peek().is("@")) {
            if (peek().is("@")) {
                skip_annotation();
            } else {
                next();
            }
        }
        std::string type = parse_type();
        while (true) {
            std::string name = expect_ident("variable name");
            std::string t = type;
            while (peek().is("[") && peek(1).is("]")) {
                next(), next();
                t += "[]";
            }
            if (accept("=")) {
                Value v = peek().is("{") ? parse_array_initializer(out) : parse_expression(out);
                if (!retarget(out, v, name, t)) {
                    Statement s = make(v.has_string ? StatementKind::concat : StatementKind::declaration);
                    s.defs = {name};
                    s.uses = v.uses;
                    s.declared_type = t;
                    out.push_back(std::move(s));
                }
            } else {
                Statement s = make(StatementKind::declaration);
                s.defs = {name};
                s.declared_type = t;
                out.push_back(std::move(s));
            }
            ctx_.locals[name] = t;
            if (!accept(",")) break;
        }
    }

    void parse_expression_statement(std::vector<Statement>& out) {
        Value v = parse_expression(out);
        if (v.effect) return;
        if (v.call_stmt && *v.call_stmt + 1 == out.size()) {
            Statement& s = out.back();
            release_temp(*s.call->result_var);
            s.call->result_var.reset();
            s.defs.clear();
            s.declared_type.reset();
            return;
        }
        Statement s = make(StatementKind::opaque);
        s.uses = v.uses;
        s.defs = v.uses;
        out.push_back(std::move(s));
    }

    // ---- expressions -----------------------------------------------------

    std::string new_temp() {
        while (ctx_.locals.count("$t" + std::to_string(ctx_.temps))) ++ctx_.temps;
        std::string name = "$t" + std::to_string(ctx_.temps++);
        ctx_.locals[name] = "var";
        return name;
    }

    void release_temp(const std::string& name) {
        if (name == "$t" + std::to_string(ctx_.temps - 1)) {
            --ctx_.temps;
            ctx_.locals.erase(name);
        }
    }

    /// Points the invocation that produced `v` at `target` instead of a temporary.
    bool retarget(std::vector<Statement>& out, const Value& v, const std::string& target,
                  std::optional<std::string> declared_type) {
        if (!v.call_stmt || *v.call_stmt + 1 != out.size()) return false;
        Statement& s = out.back();
        release_temp(*s.call->result_var);
        s.call->result_var = target;
        s.defs = {target};
        s.declared_type = std::move(declared_type);
        return true;
    }

    /// Gives a composite value a name so it can be passed as an argument or receiver.
    std::optional<std::string> materialize(std::vector<Statement>& out, const Value& v) {
        if (v.var) return v.var;
        if (v.uses.empty()) return std::nullopt;
        Statement s = make(v.has_string ? StatementKind::concat : StatementKind::declaration);
        std::string t = new_temp();
        s.defs = {t};
        s.uses = v.uses;
        s.declared_type = "var";
        out.push_back(std::move(s));
        return t;
    }

    Value parse_expression(std::vector<Statement>& out) {
        Value lhs = parse_binary(out);
        auto [op, n] = peek_operator();
        if (!op.empty() && is_assign_op(op)) {
            take_operator();
            Value rhs = peek().is("{") ? parse_array_initializer(out) : parse_expression(out);
            return emit_assignment(out, lhs, op, rhs);
        }
        return lhs;
    }

    Value emit_assignment(std::vector<Statement>& out, const Value& lhs, const std::string& op, const Value& rhs) {
        Value result;
        result.effect = true;
        if (lhs.var && !lhs.call_stmt) {
            const std::string& x = *lhs.var;
            if (op == "=" && retarget(out, rhs, x, std::nullopt)) {
                // invocation now writes x directly
            } else {
                bool concat = rhs.has_string || (op == "+=" && rhs.string_literal);
                Statement s = make(concat ? StatementKind::concat : StatementKind::assignment);
                s.defs = {x};
                if (op != "=") s.uses.push_back(x);
                add_all(s.uses, rhs.uses);
                out.push_back(std::move(s));
            }
            result.var = x;
            result.uses = {x};
            return result;
        }
        if (!lhs.uses.empty()) {
            // store into a field or element of a local: weak update of the base
            Statement s = make(StatementKind::assignment);
            s.defs = {lhs.uses.front()};
            s.uses = lhs.uses;
            add_all(s.uses, rhs.uses);
            out.push_back(std::move(s));
            result.uses = s.defs;
            return result;
        }
        Statement s = make(StatementKind::opaque);
        s.uses = rhs.uses;
        s.defs = rhs.uses;
        out.push_back(std::move(s));
        result.uses = rhs.uses;
        return result;
    }

    Value combine(Value a, const Value& b, std::string_view op) {
        Value v;
        v.uses = std::move(a.uses);
        add_all(v.uses, b.uses);
        v.has_string = a.has_string || b.has_string || (op == "+" && (a.stringish() || b.stringish()));
        return v;
    }

    Value parse_binary(std::vector<Statement>& out) {
        Value v = parse_unary(out);
        while (true) {
            if (peek().is("?")) {
                next();
                Value a = parse_expression(out);
                expect(":", "':' in conditional expression");
                Value b = parse_expression(out);
                Value c = combine(std::move(v), a, "?");
                v = combine(std::move(c), b, ":");
                v.has_string = v.has_string || a.stringish() || b.stringish();
                continue;
            }
            if (peek().is("instanceof")) {
                next();
                accept("final");
                parse_type();
                if (peek().is_ident() && !detail::is_keyword(peek().text)) next();
                v = composite(v.uses);
                continue;
            }
            auto [op, n] = peek_operator();
            if (op.empty() || is_assign_op(op) || op == "!" || op == "~" || op == "++" || op == "--") break;
            take_operator();
            Value r = parse_unary(out);
            v = combine(std::move(v), r, op);
        }
        return v;
    }

    Value parse_unary(std::vector<Statement>& out) {
        auto [op, n] = peek_operator();
        if (op == "++" || op == "--") {
            take_operator();
            Value v = parse_unary(out);
            return increment(out, v);
        }
        if (op == "!" || op == "~" || op == "-" || op == "+") {
            take_operator();
            Value v = parse_unary(out);
            if (v.literal) return v;
            return composite(v.uses);
        }
        return parse_postfix(out, parse_primary(out));
    }

    Value increment(std::vector<Statement>& out, const Value& v) {
        if (v.var) {
            Statement s = make(StatementKind::assignment);
            s.defs = {*v.var};
            s.uses = {*v.var};
            out.push_back(std::move(s));
        }
        Value r = composite(v.uses);
        r.effect = v.var.has_value();
        return r;
    }

    bool is_lambda_at_paren() const {
        int depth = 0;
        for (std::size_t k = 0;; ++k) {
            const Token& t = peek(k);
            if (t.kind == TokenKind::end) return false;
            if (t.is("(")) ++depth;
            if (t.is(")") && --depth == 0) return peek(k + 1).is("->");
        }
    }

    bool is_cast_at_paren() {
        std::size_t save = pos_;
        bool ok = false;
        try {
            next();
            if (peek().is_ident() && !detail::is_keyword(peek().text) && !ctx_.locals.count(peek().text)) {
                std::string first = peek().text;
                parse_type();
                while (peek().is("&")) {
                    next();
                    parse_type();
                }
                if (peek().is(")")) {
                    const Token& after = peek(1);
                    bool operand = (after.is_ident() && (!detail::is_keyword(after.text) || after.is("this") ||
                                                         after.is("new") || after.is("super") || after.is("null") ||
                                                         after.is("true") || after.is("false"))) ||
                                   after.kind == TokenKind::string || after.kind == TokenKind::number ||
                                   after.kind == TokenKind::character || after.is("(") || after.is("!") || after.is("~");
                    if (is_primitive(first) && (after.is("-") || after.is("+"))) operand = true;
                    ok = operand && !after.is("instanceof");
                }
            }
        } catch (const SyntaxError&) {
            ok = false;
        }
        pos_ = save;
        return ok;
    }

    Value skip_lambda() {
        Value v;
        if (peek().is("(")) {
            skip_balanced("(", ")");
        } else {
            next();
        }
        expect("->", "'->'");
        if (peek().is("{")) {
            collect_balanced("{", "}", v.uses);
            return v;
        }
        int depth = 0;
        while (true) {
            const Token& t = peek();
            if (t.kind == TokenKind::end) fail(t, "end of lambda");
            if (depth == 0 && (t.is(",") || t.is(")") || t.is(";") || t.is("}") || t.is("]"))) break;
            if (t.is("(") || t.is("{") || t.is("[")) ++depth;
            if (t.is(")") || t.is("}") || t.is("]")) --depth;
            note_local(v.uses);
            next();
        }
        return v;
    }

    Value parse_array_initializer(std::vector<Statement>& out) {
        expect("{", "'{'");
        Value v;
        while (!peek().is("}")) {
            Value e = peek().is("{") ? parse_array_initializer(out) : parse_expression(out);
            add_all(v.uses, e.uses);
            v.has_string = v.has_string || e.has_string;
            if (!accept(",")) break;
        }
        expect("}", "'}'");
        return v;
    }

    Value parse_primary(std::vector<Statement>& out) {
        const Token& t = peek();
        if (t.kind == TokenKind::number || t.kind == TokenKind::character || t.is("true") || t.is("false") ||
            t.is("null")) {
            next();
            Value v;
            v.literal = true;
            return v;
        }
        if (t.kind == TokenKind::string) {
            next();
            Value v;
            v.literal = true;
            v.string_literal = true;
            return v;
        }
        if (t.is("(")) {
            if (is_lambda_at_paren()) return skip_lambda();
            if (is_cast_at_paren()) {
                next();
                parse_type();
                while (accept("&")) parse_type();
                expect(")", "')' after cast type");
                return parse_unary(out);
            }
            next();
            Value v = parse_expression(out);
            expect(")", "')'");
            v.effect = false;
            return v;
        }
        if (t.is_ident() && peek(1).is("->")) return skip_lambda();
        if (t.is("new")) return parse_new(out);
        if (t.is("this") || t.is("super")) {
            next();
            Value v;
            v.text = t.text;
            if (t.is("this") && current_class_) v.type_hint = current_class_->name;
            if (peek().is("(")) {
                // explicit constructor invocation this(...) / super(...) is kept opaque
                next();
                Value args;
                while (!peek().is(")")) {
                    add_all(args.uses, parse_expression(out).uses);
                    if (!accept(",")) break;
                }
                expect(")", "')'");
                return args;
            }
            return v;
        }
        if (t.is("switch")) {
            next();
            Value v;
            collect_balanced("(", ")", v.uses);
            collect_balanced("{", "}", v.uses);
            return v;
        }
        if (t.is_ident() && (!detail::is_keyword(t.text) || is_primitive(t.text))) {
            std::string name = next().text;
            if (peek().is("(")) return parse_call(out, std::nullopt, name, t.line);
            Value v;
            if (auto it = ctx_.locals.find(name); it != ctx_.locals.end()) {
                v.var = name;
                v.uses = {name};
                if (it->second != "var") v.type_hint = simple_name(it->second);
            } else {
                v.text = name;
                if (auto ft = field_type(name)) {
                    v.type_hint = simple_name(*ft);
                } else if (starts_upper(name)) {
                    v.type_hint = name;
                }
            }
            return v;
        }
        fail(t, "expression");
    }

    Value parse_postfix(std::vector<Statement>& out, Value v) {
        while (true) {
            if (peek().is(".")) {
                next();
                if (peek().is("<")) skip_angle();
                if (accept("class")) {
                    v = Value{};
                    v.literal = true;
                    continue;
                }
                if (peek().is("new")) fail(peek(), "member name (qualified instance creation is not supported)");
                const Token& name_tok = peek();
                std::string name = next().text;
                if (!name_tok.is_ident()) fail(name_tok, "member name");
                if (peek().is("(")) {
                    v = parse_call(out, v, name, name_tok.line);
                    continue;
                }
                if (v.var || !v.uses.empty()) {
                    v = composite(v.uses);
                } else if (v.text) {
                    v.text = *v.text + "." + name;
                    v.literal = false;
                    v.type_hint = starts_upper(name) ? std::optional<std::string>(name) : std::nullopt;
                } else {
                    v = composite(v.uses);
                }
                continue;
            }
            if (peek().is("[")) {
                next();
                Value idx = parse_expression(out);
                expect("]", "']'");
                v = combine(composite(v.uses), idx, "[]");
                continue;
            }
            if (peek().is("::")) {
                next();
                next();
                v = composite(v.uses);
                continue;
            }
            auto [op, n] = peek_operator();
            if (op == "++" || op == "--") {
                take_operator();
                v = increment(out, v);
                continue;
            }
            return v;
        }
    }

    Value parse_new(std::vector<Statement>& out) {
        int line = next().line;
        std::string raw = expect_ident("type after new");
        while (true) {
            if (peek().is("<")) {
                skip_angle();
            } else if (peek().is(".") && peek(1).is_ident()) {
                next();
                raw += "." + next().text;
            } else {
                break;
            }
        }
        if (peek().is("[")) {
            Value v;
            while (peek().is("[")) {
                next();
                if (!peek().is("]")) add_all(v.uses, parse_expression(out).uses);
                expect("]", "']'");
            }
            if (peek().is("{")) add_all(v.uses, parse_array_initializer(out).uses);
            return v;
        }
        Value v = parse_call(out, std::nullopt, "<init>", line, simple_name(erase_type(raw)));
        if (peek().is("{")) skip_balanced("{", "}");
        return v;
    }

    Value parse_call(std::vector<Statement>& out, std::optional<Value> receiver, std::string name, int line,
                     std::optional<std::string> constructed = std::nullopt) {
        (void)line;
        CallSite cs;
        cs.callee_name = std::move(name);
        Statement s = make(StatementKind::invocation);
        if (constructed) {
            cs.receiver_type_hint = constructed;
        } else if (receiver) {
            if (receiver->var && !receiver->call_stmt) {
                cs.receiver_var = receiver->var;
                cs.receiver_type_hint = receiver->type_hint;
            } else if (receiver->var || !receiver->uses.empty()) {
                cs.receiver_var = materialize(out, *receiver);
                cs.receiver_type_hint = receiver->type_hint;
            } else if (receiver->text) {
                cs.receiver_text = receiver->text;
                cs.receiver_type_hint = receiver->type_hint;
            }
        } else if (cs.callee_name != "<init>" && current_class_) {
            cs.receiver_type_hint = current_class_->name;
        }
        if (cs.receiver_var) s.uses.push_back(*cs.receiver_var);

        expect("(", "'('");
        while (!peek().is(")")) {
            Value a = parse_expression(out);
            auto arg = materialize(out, a);
            if (arg) add_unique(s.uses, *arg);
            cs.argument_vars.push_back(arg);
            if (!accept(",")) break;
        }
        expect(")", "')' after arguments");

        std::string result = new_temp();
        cs.result_var = result;
        s.defs = {result};
        s.declared_type = "var";
        s.call = std::move(cs);
        out.push_back(std::move(s));

        Value v;
        v.var = result;
        v.uses = {result};
        v.call_stmt = out.size() - 1;
        return v;
    }

    std::string_view uri_;
    std::vector<Token> toks_;
    std::set<int> code_lines_;
    std::size_t pos_ = 0;
    std::string package_;
    const ClassModel* current_class_ = nullptr;
    MethodContext ctx_;
    int line_ = 0;
};

} // namespace

std::vector<ClassModel> parse_source(std::string_view content, std::string_view uri) {
    Parser parser(uri, detail::lex(content, uri));
    return parser.parse_unit();
}

} // namespace srmforge::program
