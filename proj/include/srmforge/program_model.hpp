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
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace srmforge::program {

enum class Modifier : unsigned {
    public_ = 1u << 0,
    private_ = 1u << 1,
    protected_ = 1u << 2,
    static_ = 1u << 3,
    final_ = 1u << 4,
    abstract_ = 1u << 5,
};

class Modifiers {
public:
    constexpr Modifiers() = default;
    constexpr bool has(Modifier m) const noexcept { return (bits_ & static_cast<unsigned>(m)) != 0; }
    constexpr void add(Modifier m) noexcept { bits_ |= static_cast<unsigned>(m); }
    constexpr unsigned bits() const noexcept { return bits_; }
    friend constexpr bool operator==(Modifiers, Modifiers) = default;

private:
    unsigned bits_ = 0;
};

/// Java keyword spelling in declaration order (public, protected, private, abstract, static, final).
std::string to_string(Modifiers m);

struct SourceFile {
    std::string uri; ///< project-relative path with forward slashes
    std::string content;
    std::vector<std::size_t> line_index; ///< byte offset of each line start

    static SourceFile from_text(std::string uri, std::string content);
    std::size_t line_count() const noexcept { return line_index.size(); }
    /// 1-based; empty view when out of range.
    std::string_view line(int number) const;
};

struct CallSite {
    std::optional<std::string> receiver_type_hint;
    std::optional<std::string> receiver_var;  ///< local variable the call is made on
    std::optional<std::string> receiver_text; ///< syntactic receiver when it is not a local (`ESAPI`, `System.out`)
    std::string callee_name;                  ///< `<init>` for constructor calls
    std::vector<std::optional<std::string>> argument_vars; ///< nullopt for literals and non-local names
    std::optional<std::string> result_var;
    std::optional<std::string> resolved_signature;

    bool is_constructor() const noexcept { return callee_name == "<init>"; }
    std::size_t arity() const noexcept { return argument_vars.size(); }
    friend bool operator==(const CallSite&, const CallSite&) = default;
};

enum class StatementKind {
    declaration,
    assignment,
    invocation,
    return_,
    if_,
    loop,
    try_catch,
    concat,
    opaque, ///< unsupported construct; defs and uses both list every mentioned variable
};

std::string_view to_string(StatementKind k);

struct Statement;

struct CatchClause {
    std::string exception_type;
    std::string variable;
    int line = 0;
    std::vector<Statement> body;
    friend bool operator==(const CatchClause&, const CatchClause&) = default;
};

struct Statement {
    StatementKind kind = StatementKind::opaque;
    int line = 0;
    std::vector<std::string> defs;
    std::vector<std::string> uses;
    std::optional<CallSite> call;
    std::optional<std::string> declared_type; ///< set when the statement introduces its def
    std::vector<Statement> children;          ///< then-branch, loop body or try block
    std::vector<Statement> else_children;
    std::vector<CatchClause> handlers;
    std::vector<Statement> finally_children;

    friend bool operator==(const Statement&, const Statement&) = default;
};

struct Parameter {
    std::string name;
    std::string type; ///< erased type text
    friend bool operator==(const Parameter&, const Parameter&) = default;
};

struct LineSpan {
    int start = 0;
    int end = 0;
    friend bool operator==(const LineSpan&, const LineSpan&) = default;
};

struct MethodModel {
    std::string name; ///< `<init>` for constructors
    std::string return_type;
    std::vector<Parameter> parameters;
    Modifiers modifiers;
    bool has_body = true;
    std::vector<Statement> body;
    LineSpan line_span;
    int code_lines = 0; ///< lines in the span that carry at least one token
    std::string owner;  ///< fully qualified owner class
    std::string uri;

    bool is_constructor() const noexcept { return name == "<init>"; }
    friend bool operator==(const MethodModel&, const MethodModel&) = default;
};

struct ClassModel {
    std::string package;
    std::string name;
    Modifiers modifiers;
    bool is_interface = false;
    std::vector<Parameter> fields;
    std::vector<MethodModel> methods;
    int loc = 0;
    LineSpan line_span;
    std::string uri;

    std::string qualified_name() const { return package.empty() ? name : package + "." + name; }
    friend bool operator==(const ClassModel&, const ClassModel&) = default;
};

struct Diagnostic {
    std::string uri;
    int line = 0;
    int column = 0;
    std::string message;

    /// `uri:line:col: message`
    std::string str() const;
    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct MethodRef {
    std::size_t class_index = 0;
    std::size_t method_index = 0;
    friend bool operator==(const MethodRef&, const MethodRef&) = default;
};

class ProgramModel {
public:
    std::vector<SourceFile> files;
    std::vector<ClassModel> classes;
    std::map<std::string, MethodRef> method_index;

    const MethodModel* find_method(const std::string& signature) const;
    const ClassModel* find_class(const std::string& qualified_name) const;
    const SourceFile* find_file(const std::string& uri) const;
    /// Every method in index order (sorted by canonical signature).
    std::vector<const MethodModel*> methods() const;

    friend bool operator==(const ProgramModel& a, const ProgramModel& b) {
        return a.classes == b.classes && a.method_index == b.method_index;
    }
};

struct IndexResult {
    ProgramModel program;
    std::vector<Diagnostic> diagnostics;
};

/// Parses one compilation unit of the supported Java subset. Throws SyntaxError.
std::vector<ClassModel> parse_source(std::string_view content, std::string_view uri);

/// `package.Class.method(T1,T2)` with erased parameter types and no whitespace.
std::string canonical_signature(const MethodModel& m);

/// Parses every file, resolves call sites by name and arity, and builds the method index.
/// Files that fail to parse become diagnostics; throws Error only if none of a non-empty set parse.
IndexResult index_program(std::vector<SourceFile> files);

/// Reads every `.java` file below `root` (sorted, uris relative to `root`).
std::vector<SourceFile> load_project(const std::filesystem::path& root);

/// Java text for a group of classes sharing one package. Reparsing it yields the same model
/// up to line positions.
std::string print_classes(const std::vector<ClassModel>& classes);

/// Copy with every line number, span and line count zeroed.
ClassModel without_positions(ClassModel c);

/// Reports variable uses that are not preceded by a declaration or parameter.
std::vector<Diagnostic> check_well_formed(const MethodModel& m);

/// Pre-order walk over a statement tree, including branch, handler and finally bodies.
void for_each_statement(const std::vector<Statement>& body, const std::function<void(const Statement&, int depth)>& fn);

/// All call sites in body order.
std::vector<const CallSite*> call_sites(const MethodModel& m);

/// True for compiler-introduced temporaries (`$t0`, `$t1`, ...).
bool is_synthetic_var(std::string_view name);

} // namespace srmforge::program
