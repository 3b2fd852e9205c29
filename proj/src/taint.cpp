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

#include "srmforge/taint.hpp"

#include <algorithm>
#include <map>

#include "srmforge/error.hpp"
#include "srmforge/signature.hpp"

namespace srmforge::taint {

using program::CallSite;
using program::MethodModel;
using program::ProgramModel;
using program::Statement;
using program::StatementKind;
using spec::MatchMode;
using spec::MethodPattern;

namespace {

bool match_parsed(const CallSite& c, const MethodPattern& p, const MethodSignature& sig, MatchMode mode) {
    if (sig.name != c.callee_name || sig.arity() != c.arity()) return false;
    if (mode == MatchMode::exact && p.match_mode == MatchMode::exact && c.resolved_signature)
        return *c.resolved_signature == p.signature;
    if (c.is_constructor() && sig.owner != "*")
        return c.receiver_type_hint && simple_name(*c.receiver_type_hint) == sig.simple_owner();
    return true;
}

} // namespace

bool match_pattern(const CallSite& c, const MethodPattern& p) {
    auto sig = parse_signature(p.signature, p.match_mode == MatchMode::name_and_arity);
    return sig && match_parsed(c, p, *sig, MatchMode::exact);
}

namespace {

// param >= 0 marks "whatever flowed into parameter i" while summarising a callee
struct SourceKey {
    std::string uri;
    int line = 0;
    int param = -1;
    friend auto operator<=>(const SourceKey&, const SourceKey&) = default;
};

using Path = std::vector<Step>;
using Taint = std::map<SourceKey, Path>;
using State = std::map<std::string, Taint>;

Path extended(Path p, const Step& s) {
    if (p.empty() || !(p.back() == s)) p.push_back(s);
    return p;
}

Path concat(Path a, const Path& b) {
    for (const auto& s : b) a = extended(std::move(a), s);
    return a;
}

void merge_into(Taint& into, const Taint& from) {
    for (const auto& [k, p] : from) {
        auto it = into.find(k);
        if (it == into.end()) into.emplace(k, p);
        else if (p.size() < it->second.size()) it->second = p;
    }
}

Taint extended_all(const Taint& t, const Step& s) {
    Taint out;
    for (const auto& [k, p] : t) out.emplace(k, extended(p, s));
    return out;
}

State join(const State& a, const State& b) {
    State out = a;
    for (const auto& [v, t] : b) merge_into(out[v], t);
    return out;
}

bool same_shape(const State& a, const State& b) {
    if (a.size() != b.size()) return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
        if (ia->first != ib->first || ia->second.size() != ib->second.size()) return false;
        for (auto ka = ia->second.begin(), kb = ib->second.begin(); ka != ia->second.end(); ++ka, ++kb)
            if (ka->first != kb->first) return false;
    }
    return true;
}

void assign(State& s, const std::string& var, Taint t) {
    if (t.empty()) s.erase(var);
    else s[var] = std::move(t);
}

std::string display(const CallSite& c) {
    if (c.is_constructor()) return "new " + c.receiver_type_hint.value_or("?");
    return c.callee_name;
}

struct SinkHit {
    Step step;
    Taint taint; ///< paths up to, not including, the sink step
};

struct Summary {
    Taint returns;
    std::vector<SinkHit> hits;
};

struct CompiledPattern {
    const MethodPattern* pattern;
    MethodSignature sig;
};

struct CompiledSpec {
    const spec::TaintSpec* spec;
    std::vector<CompiledPattern> sources, sinks, sanitizers, propagators;
};

CompiledPattern compile(const MethodPattern& p) { return {&p, p.parsed()}; }

class Analyzer {
public:
    Analyzer(const ProgramModel& p, const std::vector<spec::TaintSpec>& specs, const AnalysisConfig& cfg)
        : program_(p), cfg_(cfg) {
        for (const auto& s : specs) {
            CompiledSpec c{&s, {}, {}, {}, {}};
            for (const auto& x : s.sources) c.sources.push_back(compile(x.pattern));
            for (const auto& x : s.sinks) c.sinks.push_back(compile(x.pattern));
            for (const auto& x : s.sanitizers) c.sanitizers.push_back(compile(x.pattern));
            for (const auto& x : s.propagators) c.propagators.push_back(compile(x.pattern));
            specs_.push_back(std::move(c));
        }
    }

    std::size_t spec_count() const { return specs_.size(); }

    Summary run(const MethodModel& m, std::size_t spec, int level, State init) {
        Ctx ctx{m, specs_[spec], level, {}};
        block(m.body, std::move(init), ctx, nullptr);
        return std::move(ctx.out);
    }

    std::vector<Finding> findings(const MethodModel& m, std::size_t spec) {
        auto sum = run(m, spec, 0, {});
        const auto& sp = *specs_[spec].spec;
        std::vector<Finding> out;
        for (const auto& h : sum.hits)
            for (const auto& [k, path] : h.taint) {
                if (k.param >= 0) continue;
                Finding f;
                f.spec_id = sp.id;
                f.cwe = sp.cwe;
                f.source = {k.uri, k.line};
                f.sink = {h.step.uri, h.step.line};
                f.path = extended(path, h.step);
                f.message = sp.message;
                out.push_back(std::move(f));
            }
        return out;
    }

    int max_iterations = 0;

private:
    struct Ctx {
        const MethodModel& m;
        const CompiledSpec& spec;
        int level;
        Summary out;
    };

    const Summary& summary(const MethodModel& callee, std::size_t spec, int level) {
        auto key = std::make_tuple(program::canonical_signature(callee), spec, level);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        State init;
        for (std::size_t i = 0; i < callee.parameters.size(); ++i) {
            const auto& prm = callee.parameters[i];
            Step enter{callee.uri, callee.line_span.start, "enters " + callee.name + " as parameter '" + prm.name + "'"};
            init[prm.name] = Taint{{SourceKey{"", 0, static_cast<int>(i)}, Path{enter}}};
        }
        auto sum = run(callee, spec, level, std::move(init));
        return memo_.emplace(key, std::move(sum)).first->second;
    }

    std::size_t spec_index(const CompiledSpec& s) const { return static_cast<std::size_t>(&s - specs_.data()); }

    bool matches(const CallSite& c, const CompiledPattern& p) const {
        return match_parsed(c, *p.pattern, p.sig, cfg_.match_mode);
    }

    static Taint taint_of(const State& s, const std::optional<std::string>& var) {
        if (!var) return {};
        auto it = s.find(*var);
        return it == s.end() ? Taint{} : it->second;
    }

    State block(const std::vector<Statement>& body, State s, Ctx& ctx, State* any) {
        for (const auto& st : body) {
            s = statement(st, std::move(s), ctx, any);
            if (any) *any = join(*any, s);
        }
        return s;
    }

    State statement(const Statement& st, State s, Ctx& ctx, State* any) {
        const std::string& uri = ctx.m.uri;
        switch (st.kind) {
        case StatementKind::if_: {
            State then = block(st.children, s, ctx, any);
            State other = block(st.else_children, s, ctx, any);
            return join(then, other);
        }
        case StatementKind::loop: {
            std::size_t limit = 1;
            program::for_each_statement(st.children, [&](const Statement&, int) { ++limit; });
            State head = s;
            int iterations = 0;
            while (true) {
                ++iterations;
                State next = join(s, block(st.children, head, ctx, any));
                bool stable = same_shape(next, head);
                head = std::move(next);
                if (stable || static_cast<std::size_t>(iterations) > limit) break;
            }
            max_iterations = std::max(max_iterations, iterations);
            return head;
        }
        case StatementKind::try_catch: {
            State seen = s;
            State after = block(st.children, s, ctx, &seen);
            if (any) *any = join(*any, seen);
            for (const auto& h : st.handlers) {
                State entry = seen;
                entry.erase(h.variable);
                after = join(after, block(h.body, std::move(entry), ctx, any));
            }
            if (!st.finally_children.empty()) after = block(st.finally_children, join(after, seen), ctx, any);
            return after;
        }
        case StatementKind::return_: {
            for (const auto& u : st.uses) {
                auto it = s.find(u);
                if (it == s.end()) continue;
                Step ret{uri, st.line, ctx.m.name + " returns tainted data"};
                merge_into(ctx.out.returns, extended_all(it->second, ret));
            }
            return s;
        }
        case StatementKind::invocation:
            if (st.call) return call(st, *st.call, std::move(s), ctx);
            [[fallthrough]];
        default: {
            Taint t;
            for (const auto& u : st.uses) merge_into(t, taint_of(s, u));
            for (const auto& d : st.defs) {
                if (t.empty() || program::is_synthetic_var(d)) assign(s, d, t);
                else assign(s, d, extended_all(t, Step{uri, st.line, "tainted data flows into '" + d + "'"}));
            }
            return s;
        }
        }
    }

    State call(const Statement& st, const CallSite& c, State s, Ctx& ctx) {
        s = transfer(st, c, std::move(s), ctx);
        // sources add taint on top of whatever the call already carries
        const std::string& uri = ctx.m.uri;
        const auto& sp = ctx.spec;
        for (std::size_t k = 0; k < sp.sources.size(); ++k) {
            if (!matches(c, sp.sources[k])) continue;
            const auto& o = sp.spec->sources[k].out;
            std::optional<std::string> target;
            if (o.kind == dataset::DataOut::Kind::return_value) target = c.result_var;
            else if (o.kind == dataset::DataOut::Kind::parameter && static_cast<std::size_t>(o.parameter) < c.arity())
                target = c.argument_vars[static_cast<std::size_t>(o.parameter)];
            if (!target) continue;
            std::string what = o.kind == dataset::DataOut::Kind::return_value
                                   ? "returns untrusted data"
                                   : "writes untrusted data into argument " + std::to_string(o.parameter);
            Step step{uri, st.line, "source: " + display(c) + " " + what};
            merge_into(s[*target], Taint{{SourceKey{uri, st.line, -1}, Path{step}}});
        }
        return s;
    }

    State transfer(const Statement& st, const CallSite& c, State s, Ctx& ctx) {
        const std::string& uri = ctx.m.uri;
        const auto& sp = ctx.spec;
        auto arg = [&](std::size_t i) -> Taint {
            return i < c.argument_vars.size() ? taint_of(s, c.argument_vars[i]) : Taint{};
        };
        auto into = [&](const std::string& var) { return Step{uri, st.line, "tainted data flows into '" + var + "'"}; };
        auto out_var = [&](const spec::FlowOut& o) -> std::optional<std::string> {
            if (o.kind == dataset::DataOut::Kind::return_value) return c.result_var;
            if (o.kind == dataset::DataOut::Kind::parameter && static_cast<std::size_t>(o.parameter) < c.arity())
                return c.argument_vars[static_cast<std::size_t>(o.parameter)];
            return std::nullopt;
        };

        for (std::size_t k = 0; k < sp.sinks.size(); ++k) {
            if (!matches(c, sp.sinks[k])) continue;
            for (int i : sp.spec->sinks[k].in) {
                Taint t = arg(static_cast<std::size_t>(i));
                if (t.empty()) continue;
                Step step{uri, st.line, "sink: " + display(c) + " receives tainted argument " + std::to_string(i)};
                ctx.out.hits.push_back({step, std::move(t)});
            }
        }

        for (std::size_t k = 0; k < sp.sanitizers.size(); ++k) {
            if (!matches(c, sp.sanitizers[k])) continue;
            if (c.result_var) s.erase(*c.result_var);
            if (auto target = out_var(sp.spec->sanitizers[k].out)) s.erase(*target);
            return s;
        }

        for (std::size_t k = 0; k < sp.propagators.size(); ++k) {
            if (!matches(c, sp.propagators[k])) continue;
            const auto& pr = sp.spec->propagators[k];
            Taint t;
            for (int i : pr.in) merge_into(t, arg(static_cast<std::size_t>(i)));
            auto target = out_var(pr.out);
            if (c.result_var && c.result_var != target) s.erase(*c.result_var);
            if (target) assign(s, *target, t.empty() ? t : extended_all(t, into(*target)));
            return s;
        }

        const MethodModel* callee = c.resolved_signature ? program_.find_method(*c.resolved_signature) : nullptr;
        if (callee && callee->has_body && ctx.level < cfg_.max_call_depth) {
            const Summary& sum = summary(*callee, spec_index(sp), ctx.level + 1);
            Taint result;
            const Step back = c.result_var ? Step{uri, st.line, "'" + *c.result_var + "' receives tainted data returned by " + callee->name}
                                           : Step{};
            for (const auto& [k, path] : sum.returns) {
                if (k.param < 0) {
                    merge_into(result, Taint{{k, extended(path, back)}});
                    continue;
                }
                for (const auto& [ck, cp] : arg(static_cast<std::size_t>(k.param)))
                    merge_into(result, Taint{{ck, extended(concat(cp, path), back)}});
            }
            for (const auto& h : sum.hits) {
                Taint t;
                for (const auto& [k, path] : h.taint) {
                    if (k.param < 0) continue; // the callee reports its own flows
                    for (const auto& [ck, cp] : arg(static_cast<std::size_t>(k.param)))
                        merge_into(t, Taint{{ck, concat(cp, path)}});
                }
                if (!t.empty()) ctx.out.hits.push_back({h.step, std::move(t)});
            }
            if (c.result_var) assign(s, *c.result_var, std::move(result));
            return s;
        }

        // unknown call: anything tainted going in taints the result and the receiver
        Taint t = taint_of(s, c.receiver_var);
        for (std::size_t i = 0; i < c.arity(); ++i) merge_into(t, arg(i));
        if (c.result_var) {
            if (t.empty() || program::is_synthetic_var(*c.result_var)) assign(s, *c.result_var, t);
            else assign(s, *c.result_var, extended_all(t, into(*c.result_var)));
        }
        if (c.receiver_var && !t.empty()) {
            Taint r = program::is_synthetic_var(*c.receiver_var) ? t : extended_all(t, into(*c.receiver_var));
            merge_into(s[*c.receiver_var], r);
        }
        return s;
    }

    const ProgramModel& program_;
    AnalysisConfig cfg_;
    std::vector<CompiledSpec> specs_;
    std::map<std::tuple<std::string, std::size_t, int>, Summary> memo_;
};

void sort_and_coalesce(std::vector<Finding>& f) {
    std::sort(f.begin(), f.end(), [](const Finding& a, const Finding& b) {
        if (a.key() != b.key()) return a.key() < b.key();
        if (a.path.size() != b.path.size()) return a.path.size() < b.path.size();
        for (std::size_t i = 0; i < a.path.size(); ++i) {
            const auto& x = a.path[i];
            const auto& y = b.path[i];
            if (std::tie(x.uri, x.line, x.description) != std::tie(y.uri, y.line, y.description))
                return std::tie(x.uri, x.line, x.description) < std::tie(y.uri, y.line, y.description);
        }
        return false;
    });
    f.erase(std::unique(f.begin(), f.end(), [](const Finding& a, const Finding& b) { return a.key() == b.key(); }),
            f.end());
}

} // namespace

std::vector<Finding> analyze_method(const MethodModel& m, const std::vector<spec::TaintSpec>& specs,
                                    const ProgramModel& p, const AnalysisConfig& cfg, AnalysisStats* stats) {
    if (cfg.max_call_depth < 0) throw Error("max call depth must be >= 0");
    Analyzer a(p, specs, cfg);
    std::vector<Finding> out;
    if (m.has_body)
        for (std::size_t i = 0; i < a.spec_count(); ++i) {
            auto f = a.findings(m, i);
            out.insert(out.end(), f.begin(), f.end());
        }
    sort_and_coalesce(out);
    if (stats) {
        stats->max_loop_iterations = a.max_iterations;
        stats->statements = 0;
        program::for_each_statement(m.body, [&](const Statement&, int) { ++stats->statements; });
    }
    return out;
}

std::vector<Finding> analyze_program(const ProgramModel& p, const std::vector<spec::TaintSpec>& specs,
                                     const AnalysisConfig& cfg) {
    if (cfg.max_call_depth < 0) throw Error("max call depth must be >= 0");
    Analyzer a(p, specs, cfg);
    std::vector<Finding> out;
    for (const auto* m : p.methods()) {
        if (!m->has_body) continue;
        for (std::size_t i = 0; i < a.spec_count(); ++i) {
            auto f = a.findings(*m, i);
            out.insert(out.end(), f.begin(), f.end());
        }
    }
    sort_and_coalesce(out);
    return out;
}

nlohmann::ordered_json to_json(const Finding& f) {
    nlohmann::ordered_json j;
    j["specId"] = f.spec_id;
    j["cwe"] = std::string(label_id(f.cwe));
    j["source"] = {{"uri", f.source.uri}, {"line", f.source.line}};
    j["sink"] = {{"uri", f.sink.uri}, {"line", f.sink.line}};
    auto path = nlohmann::ordered_json::array();
    for (const auto& s : f.path) path.push_back({{"uri", s.uri}, {"line", s.line}, {"description", s.description}});
    j["path"] = path;
    j["message"] = f.message;
    return j;
}

nlohmann::ordered_json to_json(const std::vector<Finding>& findings) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& f : findings) a.push_back(to_json(f));
    return a;
}

nlohmann::ordered_json to_json(const AnalysisConfig& c) {
    return {{"maxCallDepth", c.max_call_depth}, {"matchMode", std::string(spec::to_string(c.match_mode))}};
}

AnalysisConfig analysis_config_from_json(const nlohmann::json& j) {
    AnalysisConfig c;
    if (!j.is_object()) throw FormatError("", "analysis config must be an object");
    if (j.contains("maxCallDepth")) {
        if (!j["maxCallDepth"].is_number_integer() || j["maxCallDepth"].get<int>() < 0)
            throw FormatError("/maxCallDepth", "expected an integer >= 0");
        c.max_call_depth = j["maxCallDepth"].get<int>();
    }
    if (j.contains("matchMode")) {
        auto m = j["matchMode"].is_string() ? spec::parse_match_mode(j["matchMode"].get<std::string>()) : std::nullopt;
        if (!m) throw FormatError("/matchMode", "expected exact or name_and_arity");
        c.match_mode = *m;
    }
    return c;
}

} // namespace srmforge::taint
