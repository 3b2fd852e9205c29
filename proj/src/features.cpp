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

#include "srmforge/features.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "srmforge/error.hpp"

namespace srmforge::features::detail {
extern const std::string_view kDefaultTokensJson;
}

namespace srmforge::features {

using program::ClassModel;
using program::MethodModel;
using program::Modifier;
using program::Modifiers;
using program::ProgramModel;
using program::Statement;
using program::StatementKind;

namespace {

const std::vector<std::string> kVisibility = {"public", "protected", "private", "default"};
const std::vector<std::string> kYesNo = {"yes", "no"};
const std::vector<std::string> kReturnCategory = {"void", "primitive", "string-like", "collection-like", "other"};
const std::vector<std::string> kParamBucket = {"0", "1", "2", "3+"};
const std::vector<std::string> kAbstractness = {"abstract", "concrete"};

constexpr std::string_view kNumericIds[kNumericCount] = {
    "method_code_lines", "invocations",       "branches",         "loops",
    "exception_handlers", "parameters",       "vars_defined",     "vars_used",
    "class_code_lines",  "class_method_count", "class_name_tokens", "statements",
    "max_nesting",
};

double visibility_index(Modifiers m) {
    if (m.has(Modifier::public_)) return 0;
    if (m.has(Modifier::protected_)) return 1;
    if (m.has(Modifier::private_)) return 2;
    return 3;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

double return_category(const std::string& type) {
    static const std::set<std::string> primitives = {"int", "long", "short", "byte", "char", "boolean", "float", "double"};
    static const std::set<std::string> strings = {"String", "CharSequence", "StringBuilder", "StringBuffer", "char[]"};
    static const std::vector<std::string> collections = {"List", "Set", "Map", "Collection", "Iterable",
                                                         "Iterator", "Enumeration", "Queue", "Deque"};
    std::string simple = simple_name(type);
    if (type == "void") return 0;
    if (primitives.count(simple)) return 1;
    if (strings.count(simple)) return 2;
    if (simple.size() > 2 && simple.compare(simple.size() - 2, 2, "[]") == 0) return 3;
    for (const auto& c : collections) {
        if (simple.size() >= c.size() && simple.compare(simple.size() - c.size(), c.size(), c) == 0) return 3;
    }
    return 4;
}

bool is_control(StatementKind k) {
    return k == StatementKind::if_ || k == StatementKind::loop || k == StatementKind::try_catch;
}

} // namespace

std::string_view to_string(FeatureKind k) {
    switch (k) {
    case FeatureKind::numeric: return "numeric";
    case FeatureKind::binary: return "binary";
    case FeatureKind::categorical: return "categorical";
    }
    return "";
}

std::string_view to_string(TokenScope s) {
    switch (s) {
    case TokenScope::method_name: return "method_name";
    case TokenScope::class_name: return "class_name";
    case TokenScope::invoked_names: return "invoked_names";
    case TokenScope::parameter_types: return "parameter_types";
    case TokenScope::return_type: return "return_type";
    }
    return "";
}

std::optional<TokenScope> parse_scope(std::string_view s) {
    for (auto scope : {TokenScope::method_name, TokenScope::class_name, TokenScope::invoked_names,
                       TokenScope::parameter_types, TokenScope::return_type}) {
        if (to_string(scope) == s) return scope;
    }
    return std::nullopt;
}

TokenTable parse_token_table(std::string_view json_text, const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("schema_version") || !doc["schema_version"].is_string())
        throw FormatError(path + "/schema_version", "missing schema_version");
    if (!doc.contains("groups") || !doc["groups"].is_array()) throw FormatError(path + "/groups", "missing groups array");

    TokenTable table;
    table.schema_version = doc["schema_version"].get<std::string>();
    std::set<std::string> ids;
    const auto& groups = doc["groups"];
    for (std::size_t i = 0; i < groups.size(); ++i) {
        std::string where = path + "/groups/" + std::to_string(i);
        const auto& g = groups[i];
        if (!g.is_object() || !g.value("id", nlohmann::json()).is_string() || !g.value("token", nlohmann::json()).is_string() ||
            !g.value("scopes", nlohmann::json()).is_array())
            throw FormatError(where, "expected {id, token, scopes}");
        TokenGroup group;
        group.id = g["id"].get<std::string>();
        group.token = g["token"].get<std::string>();
        if (group.token.empty() || lower(group.token) != group.token)
            throw FormatError(where + "/token", "token must be non-empty lowercase");
        if (!ids.insert(group.id).second) throw FormatError(where + "/id", "duplicate id '" + group.id + "'");
        for (const auto& s : g["scopes"]) {
            auto scope = s.is_string() ? parse_scope(s.get<std::string>()) : std::nullopt;
            if (!scope) throw FormatError(where + "/scopes", "unknown scope " + s.dump());
            group.scopes.push_back(*scope);
        }
        if (group.scopes.empty()) throw FormatError(where + "/scopes", "at least one scope required");
        table.groups.push_back(std::move(group));
    }
    if (table.groups.size() != kBinaryCount)
        throw FormatError(path + "/groups",
                          "expected " + std::to_string(kBinaryCount) + " groups, found " + std::to_string(table.groups.size()));
    return table;
}

TokenTable load_token_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(path, "cannot open token table");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_token_table(buf.str(), path);
}

const TokenTable& default_token_table() {
    static const TokenTable table = parse_token_table(detail::kDefaultTokensJson, "data/tokens.json");
    return table;
}

std::optional<std::size_t> FeatureSchema::find(std::string_view id) const {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].id == id) return i;
    }
    return std::nullopt;
}

std::size_t FeatureSchema::count(FeatureKind k) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [k](const FeatureEntry& e) { return e.kind == k; }));
}

FeatureSchema make_schema(const TokenTable& tokens) {
    FeatureSchema schema;
    schema.version = "features-1/" + tokens.schema_version;
    for (std::size_t i = 0; i < kNumericCount; ++i) {
        schema.entries.push_back({std::string(kNumericIds[i]), FeatureKind::numeric, {}, i >= 11});
    }
    for (const auto& g : tokens.groups) schema.entries.push_back({g.id, FeatureKind::binary, {}, false});
    schema.entries.push_back({"method_visibility", FeatureKind::categorical, kVisibility, false});
    schema.entries.push_back({"method_static", FeatureKind::categorical, kYesNo, false});
    schema.entries.push_back({"return_category", FeatureKind::categorical, kReturnCategory, false});
    schema.entries.push_back({"parameter_bucket", FeatureKind::categorical, kParamBucket, false});
    schema.entries.push_back({"class_visibility", FeatureKind::categorical, kVisibility, false});
    schema.entries.push_back({"class_abstractness", FeatureKind::categorical, kAbstractness, false});
    schema.entries.push_back({"constructor", FeatureKind::categorical, kYesNo, false});
    return schema;
}

const FeatureSchema& default_schema() {
    static const FeatureSchema schema = make_schema(default_token_table());
    return schema;
}

void check_vector(const FeatureVector& v, const FeatureSchema& schema) {
    if (v.schema_version != schema.version)
        throw SchemaMismatch("feature vector schema '" + v.schema_version + "' does not match '" + schema.version + "'");
    if (v.values.size() != schema.size())
        throw SchemaMismatch("feature vector has " + std::to_string(v.values.size()) + " cells, schema has " +
                             std::to_string(schema.size()));
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        double x = v.values[i];
        const auto& e = schema.entries[i];
        bool ok = true;
        switch (e.kind) {
        case FeatureKind::numeric: ok = std::isfinite(x) && x >= 0; break;
        case FeatureKind::binary: ok = x == 0 || x == 1; break;
        case FeatureKind::categorical:
            ok = x >= 0 && x < static_cast<double>(e.categories.size()) && x == static_cast<double>(static_cast<long>(x));
            break;
        }
        if (!ok) throw SchemaMismatch("cell " + e.id + " has invalid value " + std::to_string(x));
    }
}

bool token_match(std::string_view signature_part, std::string_view token) {
    if (token.empty()) return false;
    return lower(signature_part).find(lower(token)) != std::string::npos;
}

std::vector<std::string> camel_split(std::string_view name) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) out.push_back(std::move(cur));
        cur.clear();
    };
    for (std::size_t i = 0; i < name.size(); ++i) {
        char c = name[i];
        if (!std::isalnum(static_cast<unsigned char>(c))) {
            flush();
            continue;
        }
        bool upper = std::isupper(static_cast<unsigned char>(c));
        if (upper && !cur.empty()) {
            bool prev_upper = std::isupper(static_cast<unsigned char>(cur.back()));
            bool next_lower = i + 1 < name.size() && std::islower(static_cast<unsigned char>(name[i + 1]));
            if (!prev_upper || next_lower) flush();
        }
        cur += c;
    }
    flush();
    return out;
}

std::vector<double> structural_counts(const MethodModel& m, const ProgramModel& p) {
    std::vector<double> out(kNumericCount, 0.0);
    std::set<std::string> defs;
    std::set<std::string> uses;
    std::size_t calls = 0, branches = 0, loops = 0, handlers = 0, statements = 0;
    int nesting = 0;
    program::for_each_statement(m.body, [&](const Statement& s, int depth) {
        ++statements;
        if (s.kind == StatementKind::invocation) ++calls;
        if (s.kind == StatementKind::if_) ++branches;
        if (s.kind == StatementKind::loop) ++loops;
        handlers += s.handlers.size();
        if (is_control(s.kind)) nesting = std::max(nesting, depth + 1);
        for (const auto& d : s.defs)
            if (!program::is_synthetic_var(d)) defs.insert(d);
        for (const auto& u : s.uses)
            if (!program::is_synthetic_var(u)) uses.insert(u);
    });
    out[0] = m.code_lines;
    out[1] = static_cast<double>(calls);
    out[2] = static_cast<double>(branches);
    out[3] = static_cast<double>(loops);
    out[4] = static_cast<double>(handlers);
    out[5] = static_cast<double>(m.parameters.size());
    out[6] = static_cast<double>(defs.size());
    out[7] = static_cast<double>(uses.size());
    if (const ClassModel* c = p.find_class(m.owner)) {
        out[8] = c->loc;
        out[9] = static_cast<double>(c->methods.size());
        out[10] = static_cast<double>(camel_split(c->name).size());
    } else {
        out[10] = static_cast<double>(camel_split(simple_name(m.owner)).size());
    }
    out[11] = static_cast<double>(statements);
    out[12] = nesting;
    return out;
}

FeatureVector extract_features(const MethodModel& m, const ProgramModel& p, const FeatureSchema& schema,
                               const TokenTable& tokens) {
    FeatureVector v;
    v.schema_version = schema.version;
    v.values = structural_counts(m, p);

    std::vector<std::string> invoked;
    for (const auto* c : program::call_sites(m)) {
        invoked.push_back(c->is_constructor() ? c->receiver_type_hint.value_or("") : c->callee_name);
    }
    std::vector<std::string> params;
    for (const auto& prm : m.parameters) params.push_back(prm.type);

    auto any_match = [](const std::vector<std::string>& parts, const std::string& token) {
        return std::any_of(parts.begin(), parts.end(), [&](const std::string& s) { return token_match(s, token); });
    };
    std::size_t binaries = 0;
    for (const auto& entry : schema.entries) {
        if (entry.kind != FeatureKind::binary) continue;
        auto g = std::find_if(tokens.groups.begin(), tokens.groups.end(), [&](const TokenGroup& t) { return t.id == entry.id; });
        if (g == tokens.groups.end()) throw SchemaMismatch("token table has no group for feature " + entry.id);
        bool hit = false;
        for (auto scope : g->scopes) {
            switch (scope) {
            case TokenScope::method_name: hit = hit || token_match(m.name, g->token); break;
            case TokenScope::class_name: hit = hit || token_match(m.owner, g->token); break;
            case TokenScope::invoked_names: hit = hit || any_match(invoked, g->token); break;
            case TokenScope::parameter_types: hit = hit || any_match(params, g->token); break;
            case TokenScope::return_type: hit = hit || token_match(m.return_type, g->token); break;
            }
        }
        v.values.push_back(hit ? 1.0 : 0.0);
        ++binaries;
    }
    if (binaries != kBinaryCount) throw SchemaMismatch("schema must declare " + std::to_string(kBinaryCount) + " binary features");

    const ClassModel* cls = p.find_class(m.owner);
    Modifiers class_mods = cls ? cls->modifiers : Modifiers{};
    bool abstract_class = cls && (cls->is_interface || cls->modifiers.has(Modifier::abstract_));
    if (!cls) class_mods.add(Modifier::public_);

    v.values.push_back(visibility_index(m.modifiers));
    v.values.push_back(m.modifiers.has(Modifier::static_) ? 0 : 1);
    v.values.push_back(return_category(m.return_type));
    v.values.push_back(static_cast<double>(std::min<std::size_t>(m.parameters.size(), 3)));
    v.values.push_back(visibility_index(class_mods));
    v.values.push_back(abstract_class ? 0 : 1);
    v.values.push_back(m.is_constructor() ? 0 : 1);
    check_vector(v, schema);
    return v;
}

ProgramModel stub_program(const MethodSignature& sig) {
    MethodModel m;
    m.name = sig.name;
    m.return_type = sig.name == "<init>" ? "void" : "";
    for (std::size_t i = 0; i < sig.parameter_types.size(); ++i) {
        m.parameters.push_back({"p" + std::to_string(i), sig.parameter_types[i]});
    }
    m.modifiers.add(Modifier::public_);
    m.has_body = false;
    m.owner = sig.owner;

    ClassModel c;
    auto dot = sig.owner.rfind('.');
    c.package = dot == std::string::npos ? "" : sig.owner.substr(0, dot);
    c.name = simple_name(sig.owner);
    c.modifiers.add(Modifier::public_);
    c.methods.push_back(std::move(m));

    ProgramModel p;
    p.classes.push_back(std::move(c));
    p.method_index[sig.str()] = program::MethodRef{0, 0};
    return p;
}

} // namespace srmforge::features
