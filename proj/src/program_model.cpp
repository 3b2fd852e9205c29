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

#include "srmforge/program_model.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "srmforge/error.hpp"
#include "srmforge/signature.hpp"

namespace srmforge::program {

std::string to_string(Modifiers m) {
    std::string out;
    auto add = [&](Modifier mod, const char* word) {
        if (!m.has(mod)) return;
        if (!out.empty()) out += ' ';
        out += word;
    };
    add(Modifier::public_, "public");
    add(Modifier::protected_, "protected");
    add(Modifier::private_, "private");
    add(Modifier::abstract_, "abstract");
    add(Modifier::static_, "static");
    add(Modifier::final_, "final");
    return out;
}

std::string_view to_string(StatementKind k) {
    switch (k) {
    case StatementKind::declaration: return "declaration";
    case StatementKind::assignment: return "assignment";
    case StatementKind::invocation: return "invocation";
    case StatementKind::return_: return "return";
    case StatementKind::if_: return "if";
    case StatementKind::loop: return "loop";
    case StatementKind::try_catch: return "try_catch";
    case StatementKind::concat: return "concat";
    case StatementKind::opaque: return "opaque";
    }
    return "?";
}

SourceFile SourceFile::from_text(std::string uri, std::string content) {
    SourceFile f;
    f.uri = std::move(uri);
    f.content = std::move(content);
    f.line_index.push_back(0);
    for (std::size_t i = 0; i < f.content.size(); ++i) {
        if (f.content[i] == '\n' && i + 1 < f.content.size()) f.line_index.push_back(i + 1);
    }
    return f;
}

std::string_view SourceFile::line(int number) const {
    if (number < 1 || static_cast<std::size_t>(number) > line_index.size()) return {};
    std::size_t begin = line_index[static_cast<std::size_t>(number) - 1];
    std::size_t end = content.find('\n', begin);
    if (end == std::string::npos) end = content.size();
    return std::string_view(content).substr(begin, end - begin);
}

std::string Diagnostic::str() const {
    return uri + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

const MethodModel* ProgramModel::find_method(const std::string& signature) const {
    auto it = method_index.find(signature);
    if (it == method_index.end()) return nullptr;
    return &classes[it->second.class_index].methods[it->second.method_index];
}

const ClassModel* ProgramModel::find_class(const std::string& qualified_name) const {
    for (const auto& c : classes) {
        if (c.qualified_name() == qualified_name) return &c;
    }
    return nullptr;
}

const SourceFile* ProgramModel::find_file(const std::string& uri) const {
    for (const auto& f : files) {
        if (f.uri == uri) return &f;
    }
    return nullptr;
}

std::vector<const MethodModel*> ProgramModel::methods() const {
    std::vector<const MethodModel*> out;
    out.reserve(method_index.size());
    for (const auto& [sig, ref] : method_index) out.push_back(&classes[ref.class_index].methods[ref.method_index]);
    return out;
}

std::string canonical_signature(const MethodModel& m) {
    std::string out = m.owner + "." + m.name + "(";
    for (std::size_t i = 0; i < m.parameters.size(); ++i) {
        if (i) out += ",";
        out += erase_type(m.parameters[i].type);
    }
    return out + ")";
}

bool is_synthetic_var(std::string_view name) {
    if (name.size() < 3 || name.substr(0, 2) != "$t") return false;
    return std::all_of(name.begin() + 2, name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void for_each_statement(const std::vector<Statement>& body, const std::function<void(const Statement&, int)>& fn) {
    std::function<void(const std::vector<Statement>&, int)> walk = [&](const std::vector<Statement>& list, int depth) {
        for (const auto& s : list) {
            fn(s, depth);
            walk(s.children, depth + 1);
            walk(s.else_children, depth + 1);
            for (const auto& h : s.handlers) walk(h.body, depth + 1);
            walk(s.finally_children, depth + 1);
        }
    };
    walk(body, 0);
}

std::vector<const CallSite*> call_sites(const MethodModel& m) {
    std::vector<const CallSite*> out;
    for_each_statement(m.body, [&](const Statement& s, int) {
        if (s.call) out.push_back(&*s.call);
    });
    return out;
}

namespace {

void for_each_call(std::vector<Statement>& body, const std::function<void(CallSite&)>& fn) {
    for (auto& s : body) {
        if (s.call) fn(*s.call);
        for_each_call(s.children, fn);
        for_each_call(s.else_children, fn);
        for (auto& h : s.handlers) for_each_call(h.body, fn);
        for_each_call(s.finally_children, fn);
    }
}

struct Candidate {
    std::string signature;
    std::string owner_simple;
};

} // namespace

IndexResult index_program(std::vector<SourceFile> files) {
    std::sort(files.begin(), files.end(), [](const SourceFile& a, const SourceFile& b) { return a.uri < b.uri; });
    IndexResult result;
    ProgramModel& program = result.program;
    std::size_t parsed = 0;
    for (const auto& f : files) {
        try {
            auto classes = parse_source(f.content, f.uri);
            for (auto& c : classes) program.classes.push_back(std::move(c));
            ++parsed;
        } catch (const SyntaxError& e) {
            result.diagnostics.push_back({e.uri(), e.line(), e.column(), "syntax error: expected " + e.expected()});
        }
    }
    if (!files.empty() && parsed == 0) throw Error("no source file could be parsed");
    program.files = std::move(files);

    std::map<std::pair<std::string, std::size_t>, std::vector<Candidate>> by_name;
    std::set<std::string> project_types;
    for (std::size_t ci = 0; ci < program.classes.size(); ++ci) {
        const auto& cls = program.classes[ci];
        project_types.insert(cls.name);
        for (std::size_t mi = 0; mi < cls.methods.size(); ++mi) {
            const auto& m = cls.methods[mi];
            auto sig = canonical_signature(m);
            if (!program.method_index.emplace(sig, MethodRef{ci, mi}).second) {
                result.diagnostics.push_back({cls.uri, m.line_span.start, 1, "duplicate definition of " + sig});
                continue;
            }
            by_name[{m.name, m.parameters.size()}].push_back({sig, cls.name});
        }
    }
    for (auto& [key, list] : by_name) {
        std::sort(list.begin(), list.end(), [](const Candidate& a, const Candidate& b) { return a.signature < b.signature; });
    }

    for (auto& cls : program.classes) {
        for (auto& m : cls.methods) {
            std::vector<std::pair<int, CallSite*>> sites;
            std::function<void(std::vector<Statement>&)> collect = [&](std::vector<Statement>& body) {
                for (auto& s : body) {
                    if (s.call) sites.emplace_back(s.line, &*s.call);
                    collect(s.children);
                    collect(s.else_children);
                    for (auto& h : s.handlers) collect(h.body);
                    collect(s.finally_children);
                }
            };
            collect(m.body);
            for (auto [line, cs] : sites) {
                auto it = by_name.find({cs->callee_name, cs->arity()});
                if (it == by_name.end()) continue;
                std::vector<const Candidate*> pool;
                const auto& hint = cs->receiver_type_hint;
                for (const auto& c : it->second) {
                    if (hint && c.owner_simple == *hint) pool.push_back(&c);
                }
                if (pool.empty()) {
                    // constructors must name their class; library receivers stay unresolved
                    if (cs->is_constructor()) continue;
                    if (hint && !project_types.count(*hint)) continue;
                    for (const auto& c : it->second) pool.push_back(&c);
                }
                cs->resolved_signature = pool.front()->signature;
                if (pool.size() > 1) {
                    std::string msg = "ambiguous call to " + cs->callee_name + "/" + std::to_string(cs->arity()) +
                                      "; resolved to " + pool.front()->signature + " among";
                    for (const auto* c : pool) msg += " " + c->signature;
                    result.diagnostics.push_back({m.uri, line, 1, msg});
                }
            }
        }
    }
    return result;
}

std::vector<SourceFile> load_project(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root)) throw Error("project root is not a directory: " + root.string());
    std::vector<fs::path> paths;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".java") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    std::vector<SourceFile> files;
    for (const auto& p : paths) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        files.push_back(SourceFile::from_text(fs::relative(p, root).generic_string(), buf.str()));
    }
    return files;
}

// ---- printing -----------------------------------------------------------

namespace {

std::string join_uses(const std::vector<std::string>& uses, const char* empty) {
    if (uses.empty()) return empty;
    std::string out;
    for (std::size_t i = 0; i < uses.size(); ++i) {
        if (i) out += " + ";
        out += uses[i];
    }
    return out;
}

class Printer {
public:
    std::string str() && { return std::move(out_); }

    void line(int indent, const std::string& text) {
        out_.append(static_cast<std::size_t>(indent) * 4, ' ');
        out_ += text;
        out_ += '\n';
    }

    void block(int indent, const std::vector<Statement>& body) {
        for (const auto& s : body) statement(indent, s);
    }

    void statement(int indent, const Statement& s) {
        auto target = [&](const std::string& var) {
            return s.declared_type ? *s.declared_type + " " + var : var;
        };
        switch (s.kind) {
        case StatementKind::declaration:
            line(indent, target(s.defs.at(0)) + " = " + join_uses(s.uses, "null") + ";");
            break;
        case StatementKind::assignment:
            line(indent, s.defs.at(0) + " = " + join_uses(s.uses, "null") + ";");
            break;
        case StatementKind::concat:
            line(indent, target(s.defs.at(0)) + " = " + (s.uses.empty() ? "\"\"" : join_uses(s.uses, "")) + " + \"\";");
            break;
        case StatementKind::invocation: {
            const CallSite& c = *s.call;
            std::string call;
            if (c.is_constructor()) {
                call = "new " + c.receiver_type_hint.value_or("Object");
            } else if (c.receiver_var) {
                call = *c.receiver_var + "." + c.callee_name;
            } else if (c.receiver_text) {
                call = *c.receiver_text + "." + c.callee_name;
            } else {
                call = c.callee_name;
            }
            call += "(";
            for (std::size_t i = 0; i < c.argument_vars.size(); ++i) {
                if (i) call += ", ";
                call += c.argument_vars[i].value_or("null");
            }
            call += ")";
            line(indent, (c.result_var ? target(*c.result_var) + " = " : std::string()) + call + ";");
            break;
        }
        case StatementKind::return_:
            line(indent, s.uses.empty() ? "return;" : "return " + join_uses(s.uses, "") + ";");
            break;
        case StatementKind::if_:
            line(indent, "if (" + join_uses(s.uses, "true") + ") {");
            block(indent + 1, s.children);
            if (!s.else_children.empty()) {
                line(indent, "} else {");
                block(indent + 1, s.else_children);
            }
            line(indent, "}");
            break;
        case StatementKind::loop:
            line(indent, "while (" + join_uses(s.uses, "true") + ") {");
            block(indent + 1, s.children);
            line(indent, "}");
            break;
        case StatementKind::try_catch:
            line(indent, "try {");
            block(indent + 1, s.children);
            for (const auto& h : s.handlers) {
                std::string type = h.exception_type;
                for (std::size_t p = type.find('|'); p != std::string::npos; p = type.find('|', p + 3)) {
                    type.replace(p, 1, " | ");
                }
                line(indent, "} catch (" + type + " " + h.variable + ") {");
                block(indent + 1, h.body);
            }
            if (!s.finally_children.empty() || s.handlers.empty()) {
                line(indent, "} finally {");
                block(indent + 1, s.finally_children);
            }
            line(indent, "}");
            break;
        case StatementKind::opaque:
            line(indent, "assert " + join_uses(s.uses, "true") + ";");
            break;
        }
    }

    void method(const ClassModel& cls, const MethodModel& m) {
        std::string head = to_string(m.modifiers);
        if (!head.empty()) head += ' ';
        head += m.is_constructor() ? cls.name : m.return_type + " " + m.name;
        head += "(";
        for (std::size_t i = 0; i < m.parameters.size(); ++i) {
            if (i) head += ", ";
            head += m.parameters[i].type + " " + m.parameters[i].name;
        }
        head += ")";
        if (!m.has_body) {
            line(1, head + ";");
            return;
        }
        line(1, head + " {");
        block(2, m.body);
        line(1, "}");
    }

private:
    std::string out_;
};

void zero_positions(std::vector<Statement>& body) {
    for (auto& s : body) {
        s.line = 0;
        zero_positions(s.children);
        zero_positions(s.else_children);
        for (auto& h : s.handlers) {
            h.line = 0;
            zero_positions(h.body);
        }
        zero_positions(s.finally_children);
    }
}

} // namespace

std::string print_classes(const std::vector<ClassModel>& classes) {
    Printer p;
    if (!classes.empty() && !classes.front().package.empty()) {
        p.line(0, "package " + classes.front().package + ";");
        p.line(0, "");
    }
    for (const auto& cls : classes) {
        std::string head = to_string(cls.modifiers);
        if (!head.empty()) head += ' ';
        p.line(0, head + (cls.is_interface ? "interface " : "class ") + cls.name + " {");
        for (const auto& f : cls.fields) p.line(1, f.type + " " + f.name + ";");
        for (const auto& m : cls.methods) p.method(cls, m);
        p.line(0, "}");
    }
    return std::move(p).str();
}

ClassModel without_positions(ClassModel c) {
    c.loc = 0;
    c.line_span = {};
    for (auto& m : c.methods) {
        m.line_span = {};
        m.code_lines = 0;
        zero_positions(m.body);
    }
    return c;
}

std::vector<Diagnostic> check_well_formed(const MethodModel& m) {
    std::vector<Diagnostic> out;
    std::set<std::string> declared;
    for (const auto& p : m.parameters) declared.insert(p.name);
    std::function<void(const std::vector<Statement>&)> walk = [&](const std::vector<Statement>& body) {
        for (const auto& s : body) {
            for (const auto& u : s.uses) {
                if (!declared.count(u)) {
                    out.push_back({m.uri, s.line, 1, "variable '" + u + "' used before declaration in " + canonical_signature(m)});
                }
            }
            for (const auto& d : s.defs) declared.insert(d);
            walk(s.children);
            walk(s.else_children);
            for (const auto& h : s.handlers) {
                declared.insert(h.variable);
                walk(h.body);
            }
            walk(s.finally_children);
        }
    };
    walk(m.body);
    return out;
}

} // namespace srmforge::program
