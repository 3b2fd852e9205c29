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

#include "srmforge/spec.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "srmforge/error.hpp"

namespace srmforge::spec {

using dataset::DataOut;
using nlohmann::ordered_json;

std::string_view to_string(MatchMode m) { return m == MatchMode::exact ? "exact" : "name_and_arity"; }

std::optional<MatchMode> parse_match_mode(std::string_view s) {
    if (s == "exact") return MatchMode::exact;
    if (s == "name_and_arity") return MatchMode::name_and_arity;
    return std::nullopt;
}

MethodSignature MethodPattern::parsed() const {
    auto sig = parse_signature(signature, match_mode == MatchMode::name_and_arity);
    if (!sig) throw FormatError("/signature", "malformed method pattern '" + signature + "'");
    return *sig;
}

namespace {

std::vector<int> all_parameters(std::size_t arity) {
    std::vector<int> v(arity);
    for (std::size_t i = 0; i < arity; ++i) v[i] = static_cast<int>(i);
    return v;
}

std::size_t arity_of(const std::string& signature) {
    auto sig = parse_signature(signature);
    return sig ? sig->arity() : 0;
}

FlowOut out_or_return(const DataOut& o) { return o.kind == DataOut::Kind::none ? FlowOut::return_value() : o; }

std::string spec_message(Label cwe) {
    return cwe_rule_id(cwe) + " (" + std::string(cwe_title(cwe)) +
           "): untrusted data reaches a sensitive sink without sanitization";
}

} // namespace

GenerateResult generate_specs(const dataset::Dataset& d, const std::optional<std::vector<Label>>& cwes) {
    std::vector<Label> wanted;
    if (cwes) {
        std::set<Label> uniq(cwes->begin(), cwes->end());
        for (Label l : uniq)
            if (is_cwe(l)) wanted.push_back(l);
    } else {
        wanted.assign(kCweLabels.begin(), kCweLabels.end());
    }
    std::sort(wanted.begin(), wanted.end(), [](Label a, Label b) { return label_id(a) < label_id(b); });

    // records sorted by signature so the output is independent of input order
    std::vector<const dataset::MethodRecord*> records;
    for (const auto& r : d.records) records.push_back(&r);
    std::sort(records.begin(), records.end(), [](auto* a, auto* b) { return a->signature < b->signature; });

    GenerateResult res;
    for (Label cwe : wanted) {
        TaintSpec s;
        s.id = "srm-forge/" + std::string(label_id(cwe));
        s.cwe = cwe;
        s.message = spec_message(cwe);
        auto pick = [&](Label role, bool general) {
            std::vector<const dataset::MethodRecord*> out;
            for (auto* r : records) {
                if (!r->labels.has(role)) continue;
                if (general ? !r->labels.has_cwe() : r->labels.has(cwe)) out.push_back(r);
            }
            return out;
        };
        auto sources = pick(Label::source, false);
        if (sources.empty()) sources = pick(Label::source, true);
        auto sinks = pick(Label::sink, false);
        if (sinks.empty()) sinks = pick(Label::sink, true);
        for (auto* r : sources) s.sources.push_back({{r->signature, MatchMode::exact}, out_or_return(r->data_out)});
        for (auto* r : sinks)
            s.sinks.push_back({{r->signature, MatchMode::exact},
                               r->data_in.empty() ? all_parameters(arity_of(r->signature)) : r->data_in});
        for (auto* r : pick(Label::sanitizer, false))
            s.sanitizers.push_back({{r->signature, MatchMode::exact},
                                    r->data_in.empty() ? all_parameters(arity_of(r->signature)) : r->data_in,
                                    out_or_return(r->data_out)});
        if (s.sources.empty() || s.sinks.empty()) {
            std::string missing = s.sources.empty() && s.sinks.empty() ? "sources or sinks"
                                  : s.sources.empty()                  ? "sources"
                                                                       : "sinks";
            res.diagnostics.push_back(std::string(label_id(cwe)) + ": no spec generated, dataset has no " + missing);
            continue;
        }
        res.specs.push_back(std::move(s));
    }
    return res;
}

namespace {

void check_pattern(const MethodPattern& p, const std::string& where, const std::vector<int>& in, const FlowOut* out,
                   std::vector<std::string>& problems) {
    auto sig = parse_signature(p.signature, p.match_mode == MatchMode::name_and_arity);
    if (!sig) {
        problems.push_back(where + ": malformed signature '" + p.signature + "'");
        return;
    }
    const int arity = static_cast<int>(sig->arity());
    auto check_index = [&](int i, const std::string& what) {
        if (i < 0) problems.push_back(where + ": negative " + what + " index " + std::to_string(i));
        else if (p.match_mode == MatchMode::exact && i >= arity)
            problems.push_back(where + ": " + what + " index " + std::to_string(i) + " out of range for arity " +
                               std::to_string(arity) + " in " + p.signature);
    };
    std::set<int> seen;
    for (int i : in) {
        check_index(i, "parameter");
        if (!seen.insert(i).second) problems.push_back(where + ": duplicate parameter index " + std::to_string(i));
    }
    if (out && out->kind == DataOut::Kind::parameter) check_index(out->parameter, "out parameter");
    if (out && out->kind == DataOut::Kind::none) problems.push_back(where + ": out position must not be none");
}

} // namespace

std::vector<std::string> validate_spec(const TaintSpec& s) {
    std::vector<std::string> problems;
    if (s.id.empty()) problems.push_back("spec must have an id");
    if (!is_cwe(s.cwe)) problems.push_back("spec cwe must be a CWE label");
    if (s.sources.empty()) problems.push_back("spec must define at least one source");
    if (s.sinks.empty()) problems.push_back("spec must define at least one sink");
    for (std::size_t i = 0; i < s.sources.size(); ++i)
        check_pattern(s.sources[i].pattern, "sources/" + std::to_string(i), {}, &s.sources[i].out, problems);
    for (std::size_t i = 0; i < s.sinks.size(); ++i)
        check_pattern(s.sinks[i].pattern, "sinks/" + std::to_string(i), s.sinks[i].in, nullptr, problems);
    for (std::size_t i = 0; i < s.sanitizers.size(); ++i)
        check_pattern(s.sanitizers[i].pattern, "sanitizers/" + std::to_string(i), s.sanitizers[i].in,
                      &s.sanitizers[i].out, problems);
    for (std::size_t i = 0; i < s.propagators.size(); ++i)
        check_pattern(s.propagators[i].pattern, "propagators/" + std::to_string(i), s.propagators[i].in,
                      &s.propagators[i].out, problems);
    return problems;
}

std::vector<std::string> spec_warnings(const TaintSpec& s) {
    std::map<std::string, std::vector<std::string>> roles;
    for (const auto& x : s.sources) roles[x.pattern.signature].push_back("source");
    for (const auto& x : s.sinks) roles[x.pattern.signature].push_back("sink");
    for (const auto& x : s.sanitizers) roles[x.pattern.signature].push_back("sanitizer");
    for (const auto& x : s.propagators) roles[x.pattern.signature].push_back("propagator");
    std::vector<std::string> out;
    for (const auto& [sig, rs] : roles) {
        std::set<std::string> uniq(rs.begin(), rs.end());
        if (uniq.size() < 2) continue;
        std::string joined;
        for (const auto& r : uniq) joined += (joined.empty() ? "" : ", ") + r;
        out.push_back(sig + " appears as " + joined);
    }
    return out;
}

namespace {

ordered_json out_json(const FlowOut& o) {
    if (o.kind == DataOut::Kind::parameter) return ordered_json{{"parameter", o.parameter}};
    return o.kind == DataOut::Kind::none ? "none" : "return";
}

FlowOut out_from_json(const nlohmann::json& j, const std::string& path) {
    if (j.is_string() && j == "return") return FlowOut::return_value();
    if (j.is_object() && j.contains("parameter") && j["parameter"].is_number_integer())
        return FlowOut::param(j["parameter"].get<int>());
    throw FormatError(path, "expected \"return\" or {\"parameter\": i}");
}

ordered_json pattern_json(const MethodPattern& p) {
    return ordered_json{{"signature", p.signature}, {"match", std::string(to_string(p.match_mode))}};
}

MethodPattern pattern_from_json(const nlohmann::json& j, const std::string& path) {
    MethodPattern p;
    if (!j.is_object() || !j.contains("signature") || !j["signature"].is_string())
        throw FormatError(path + "/signature", "missing signature");
    p.signature = j["signature"].get<std::string>();
    if (j.contains("match")) {
        auto m = j["match"].is_string() ? parse_match_mode(j["match"].get<std::string>()) : std::nullopt;
        if (!m) throw FormatError(path + "/match", "expected exact or name_and_arity");
        p.match_mode = *m;
    }
    if (!parse_signature(p.signature, p.match_mode == MatchMode::name_and_arity))
        throw FormatError(path + "/signature", "malformed method pattern '" + p.signature + "'");
    return p;
}

std::vector<int> indices_from_json(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array()) throw FormatError(path, "expected an array of parameter indices");
    std::vector<int> v;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer()) throw FormatError(path + "/" + std::to_string(i), "expected an integer");
        v.push_back(j[i].get<int>());
    }
    return v;
}

ordered_json transfer_json(const TransferSpec& t) {
    ordered_json j = pattern_json(t.pattern);
    j["in"] = t.in;
    j["out"] = out_json(t.out);
    return j;
}

TransferSpec transfer_from_json(const nlohmann::json& j, const std::string& path) {
    TransferSpec t;
    t.pattern = pattern_from_json(j, path);
    t.in = j.contains("in") ? indices_from_json(j["in"], path + "/in") : std::vector<int>{};
    if (j.contains("out")) t.out = out_from_json(j["out"], path + "/out");
    return t;
}

const nlohmann::json& array_field(const nlohmann::json& j, const char* key, const std::string& path) {
    static const nlohmann::json empty = nlohmann::json::array();
    if (!j.contains(key)) return empty;
    if (!j[key].is_array()) throw FormatError(path + "/" + key, "expected an array");
    return j[key];
}

} // namespace

ordered_json to_json(const TaintSpec& s) {
    ordered_json j;
    j["id"] = s.id;
    j["cwe"] = std::string(label_id(s.cwe));
    auto sources = ordered_json::array();
    for (const auto& x : s.sources) {
        auto e = pattern_json(x.pattern);
        e["out"] = out_json(x.out);
        sources.push_back(e);
    }
    j["sources"] = sources;
    auto sinks = ordered_json::array();
    for (const auto& x : s.sinks) {
        auto e = pattern_json(x.pattern);
        e["in"] = x.in;
        sinks.push_back(e);
    }
    j["sinks"] = sinks;
    auto sanitizers = ordered_json::array();
    for (const auto& x : s.sanitizers) sanitizers.push_back(transfer_json(x));
    j["sanitizers"] = sanitizers;
    auto propagators = ordered_json::array();
    for (const auto& x : s.propagators) propagators.push_back(transfer_json(x));
    j["propagators"] = propagators;
    j["message"] = s.message;
    return j;
}

TaintSpec spec_from_json(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) throw FormatError(path, "expected an object");
    TaintSpec s;
    if (!j.contains("id") || !j["id"].is_string()) throw FormatError(path + "/id", "missing id");
    s.id = j["id"].get<std::string>();
    auto cwe = j.contains("cwe") && j["cwe"].is_string() ? parse_label(j["cwe"].get<std::string>()) : std::nullopt;
    if (!cwe || !is_cwe(*cwe)) throw FormatError(path + "/cwe", "expected one of the CWE label ids");
    s.cwe = *cwe;
    const auto& sources = array_field(j, "sources", path);
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const std::string p = path + "/sources/" + std::to_string(i);
        SourceSpec x;
        x.pattern = pattern_from_json(sources[i], p);
        if (sources[i].contains("out")) x.out = out_from_json(sources[i]["out"], p + "/out");
        s.sources.push_back(x);
    }
    const auto& sinks = array_field(j, "sinks", path);
    for (std::size_t i = 0; i < sinks.size(); ++i) {
        const std::string p = path + "/sinks/" + std::to_string(i);
        SinkSpec x;
        x.pattern = pattern_from_json(sinks[i], p);
        x.in = sinks[i].contains("in") ? indices_from_json(sinks[i]["in"], p + "/in")
                                       : all_parameters(x.pattern.parsed().arity());
        s.sinks.push_back(x);
    }
    const auto& sanitizers = array_field(j, "sanitizers", path);
    for (std::size_t i = 0; i < sanitizers.size(); ++i)
        s.sanitizers.push_back(transfer_from_json(sanitizers[i], path + "/sanitizers/" + std::to_string(i)));
    const auto& propagators = array_field(j, "propagators", path);
    for (std::size_t i = 0; i < propagators.size(); ++i)
        s.propagators.push_back(transfer_from_json(propagators[i], path + "/propagators/" + std::to_string(i)));
    s.message = j.contains("message") && j["message"].is_string() ? j["message"].get<std::string>()
                                                                  : spec_message(s.cwe);
    return s;
}

ordered_json to_json(const SpecFile& f) {
    ordered_json j;
    j["version"] = f.version;
    auto specs = ordered_json::array();
    for (const auto& s : f.specs) specs.push_back(to_json(s));
    j["specs"] = specs;
    return j;
}

SpecFile load_specs(std::string_view document) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError("", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("", "expected an object");
    SpecFile f;
    if (!j.contains("version") || !j["version"].is_string()) throw FormatError("/version", "missing version");
    f.version = j["version"].get<std::string>();
    if (f.version != "1") throw FormatError("/version", "unsupported spec file version '" + f.version + "'");
    const auto& specs = array_field(j, "specs", "");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const std::string path = "/specs/" + std::to_string(i);
        auto s = spec_from_json(specs[i], path);
        auto problems = validate_spec(s);
        if (!problems.empty()) throw FormatError(path, problems.front());
        if (!ids.insert(s.id).second) throw FormatError(path + "/id", "duplicate spec id '" + s.id + "'");
        f.specs.push_back(std::move(s));
    }
    return f;
}

SpecFile load_specs_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return load_specs(ss.str());
    } catch (const FormatError& e) {
        throw FormatError(path + ":" + e.path(), e.reason());
    }
}

std::string save_specs(const SpecFile& f) { return to_json(f).dump(2) + "\n"; }

} // namespace srmforge::spec
