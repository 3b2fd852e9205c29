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

// Acceptance checks. Prints one PASS/FAIL line per criterion; exits non-zero if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "../oracles.hpp"
#include "../synthetic.hpp"
#include "../test_util.hpp"
#include "srmforge/arff.hpp"
#include "srmforge/ml/evaluation.hpp"
#include "srmforge/pipeline.hpp"
#include "srmforge/sarif.hpp"
#include "srmforge/taint.hpp"

using namespace srmforge;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and budgets.
constexpr double kServletSeconds = 1.0;
constexpr double kF1Expected = 0.87;
constexpr double kGradientRelTol = 1e-4;
constexpr int kGradientInstances = 100;
constexpr double kGradientSeconds = 10.0;
constexpr std::size_t kPruneMaxRows = 6;
constexpr double kPruneSeconds = 30.0;
constexpr int kCorrSeeds = 10;
constexpr std::size_t kCorrRows = 300;
constexpr double kCorrMinAdvantage = 0.05;
constexpr double kIndepMaxGap = 0.05;
constexpr double kCorrSeconds = 120.0;
constexpr std::size_t kArffAttributes = 129;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(const std::string& name, double budget_seconds, const std::function<Outcome()>& check) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_seconds > 0 && secs > budget_seconds) {
        o.pass = false;
        o.detail += "; over the " + std::to_string(budget_seconds) + "s budget";
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << o.detail << "; " << std::fixed << std::setprecision(2)
              << secs << "s)" << std::endl;
}

int line_of(const fs::path& file, const std::string& needle) {
    std::istringstream in(srmforge::testing::read_file(file));
    std::string line;
    for (int n = 1; std::getline(in, line); ++n)
        if (line.find(needle) != std::string::npos) return n;
    return -1;
}

dataset::Dataset servlet_dataset(bool with_sanitizer) {
    auto d = dataset::load_dataset_file(srmforge::testing::data_file("servlet_srms.json"));
    if (!with_sanitizer) std::erase_if(d.records, [](const auto& r) { return r.labels.has(Label::sanitizer); });
    return d;
}

int run_cli(const std::string& args, const fs::path& log) {
    std::string cmd = std::string("\"") + SRMFORGE_CLI + "\" " + args + " >\"" + log.string() + "\" 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ---- criteria ---------------------------------------------------------------

Outcome servlet_end_to_end() {
    srmforge::testing::TempDir tmp("accept-servlet");
    auto run = [&](const std::string& variant, bool sanitizer) {
        tmp.write(variant + ".json", dataset::save_dataset(servlet_dataset(sanitizer)));
        pipeline::PipelineConfig c;
        c.project_root = srmforge::testing::fixture("servlet/" + variant);
        c.dataset_path = tmp.path() / (variant + ".json");
        c.output_dir = tmp.path() / variant;
        return pipeline::run_pipeline(c).findings;
    };
    auto sanitized = run("sanitized", true);
    auto mutant = run("mutant", false);
    auto file = srmforge::testing::fixture("servlet/mutant/org/demo/Servlet.java");
    const int src = line_of(file, "getParameter"), sink = line_of(file, "executeQuery");
    std::ostringstream d;
    d << "sanitized " << sanitized.size() << " findings, mutant " << mutant.size();
    bool ok = sanitized.empty() && mutant.size() == 1;
    if (mutant.size() == 1) {
        d << " " << cwe_rule_id(mutant[0].cwe) << " " << mutant[0].source.line << "->" << mutant[0].sink.line
          << " (expected " << src << "->" << sink << ")";
        ok = ok && mutant[0].cwe == Label::cwe89 && mutant[0].source.line == src && mutant[0].sink.line == sink;
    }
    return {ok, d.str()};
}

Outcome f1_arithmetic() {
    // 153 TP, 17 FP, 27 FN on one label: P = 153/170 = 0.90, R = 153/180 = 0.85.
    std::vector<LabelSet> pred, gold;
    auto add = [&](int n, bool p, bool g) {
        for (int i = 0; i < n; ++i) {
            pred.push_back(p ? LabelSet{Label::sanitizer} : LabelSet{});
            gold.push_back(g ? LabelSet{Label::sanitizer} : LabelSet{});
        }
    };
    add(153, true, true);
    add(17, true, false);
    add(27, false, true);
    const auto metrics = ml::evaluate_metrics(pred, gold);
    const auto& m = metrics.per_label[index_of(Label::sanitizer)];
    const double harmonic = 2 * 0.90 * 0.85 / (0.90 + 0.85);
    const double rounded = std::round(m.f1 * 100) / 100;
    std::ostringstream d;
    d << "P=" << m.precision << " R=" << m.recall << " F1=" << m.f1 << " rounds to " << rounded;
    bool ok = m.precision == 0.90 && m.recall == 0.85 && std::abs(m.f1 - harmonic) < 1e-12 && rounded == kF1Expected;
    return {ok, d.str()};
}

Outcome gradient_check() {
    Rng rng(2026);
    double worst = 0;
    for (int inst = 0; inst < kGradientInstances; ++inst) {
        const std::size_t n = 5 + uniform_below(rng, 20), dim = 1 + uniform_below(rng, 8);
        std::vector<ml::Dense> x(n, ml::Dense(dim));
        std::vector<double> y(n);
        for (auto& r : x)
            for (auto& v : r) v = 4 * uniform_unit(rng) - 2;
        for (auto& v : y) v = static_cast<double>(uniform_below(rng, 2));
        ml::Dense w(dim);
        for (auto& v : w) v = 2 * uniform_unit(rng) - 1;
        const double b = uniform_unit(rng) - 0.5, l2 = 0.1 * uniform_unit(rng);
        auto g = ml::logistic_gradient(w, b, x, y, l2);
        const double h = 1e-5;
        for (std::size_t k = 0; k <= dim; ++k) {
            ml::Dense wp = w, wm = w;
            double bp = b, bm = b;
            if (k < dim) {
                wp[k] += h;
                wm[k] -= h;
            } else {
                bp += h;
                bm -= h;
            }
            double fd = (ml::logistic_loss(wp, bp, x, y, l2) - ml::logistic_loss(wm, bm, x, y, l2)) / (2 * h);
            double rel = std::abs(fd - g[k]) / std::max(1e-8, std::max(std::abs(fd), std::abs(g[k])));
            worst = std::max(worst, rel);
        }
    }
    std::ostringstream d;
    d << kGradientInstances << " instances, max relative error " << std::scientific << std::setprecision(2) << worst
      << " <= " << kGradientRelTol;
    return {worst <= kGradientRelTol, d.str()};
}

Outcome pruned_sets_oracle() {
    // Every non-empty multiset of at most six label sets drawn from the 8 subsets of {source, sink, cwe89}.
    const std::vector<LabelSet> alphabet = [] {
        std::vector<LabelSet> out;
        const Label three[] = {Label::source, Label::sink, Label::cwe89};
        for (unsigned mask = 0; mask < 8; ++mask) {
            LabelSet s;
            for (int i = 0; i < 3; ++i)
                if (mask & (1u << i)) s.set(three[i]);
            out.push_back(s);
        }
        return out;
    }();
    std::size_t datasets = 0, comparisons = 0, mismatches = 0;
    std::vector<LabelSet> rows;
    std::function<void(std::size_t)> extend = [&](std::size_t from) {
        if (!rows.empty()) ++datasets;
        for (int p = 0; !rows.empty() && p <= static_cast<int>(kPruneMaxRows); ++p) {
            auto got = ml::prune_label_sets(rows, p);
            auto want = srmforge::testing::prune_oracle(rows, p);
            ++comparisons;
            if (got.frequent != want.frequent || got.reassignment != want.reassignment) ++mismatches;
        }
        if (rows.size() == kPruneMaxRows) return;
        for (std::size_t i = from; i < alphabet.size(); ++i) {
            rows.push_back(alphabet[i]);
            extend(i);
            rows.pop_back();
        }
    };
    extend(0);
    std::ostringstream d;
    d << datasets << " multisets, " << comparisons << " comparisons, " << mismatches << " mismatches";
    return {mismatches == 0 && datasets == 3002, d.str()};
}

double mean_macro_f1(const std::function<ml::TrainingMatrix(std::size_t, Rng&)>& gen, const ml::ModelConfig& cfg) {
    double total = 0;
    for (int seed = 1; seed <= kCorrSeeds; ++seed) {
        Rng rng(static_cast<std::uint64_t>(seed));
        auto train = gen(kCorrRows, rng);
        auto test = gen(kCorrRows, rng);
        auto model = ml::train_model(train, cfg);
        std::vector<LabelSet> pred;
        for (const auto& x : test.rows) pred.push_back(ml::predict_labels(model, x).labels);
        total += ml::evaluate_metrics(pred, test.labels).macro_f1;
    }
    return total / kCorrSeeds;
}

Outcome correlation_advantage() {
    ml::ModelConfig eps;
    ml::ModelConfig br;
    br.kind = ml::ModelKind::binary_relevance;
    auto correlated = [](std::size_t n, Rng& rng) { return srmforge::testing::correlated_labels(n, rng); };
    auto independent = [](std::size_t n, Rng& rng) { return srmforge::testing::independent_labels(n, rng); };
    const double c_eps = mean_macro_f1(correlated, eps), c_br = mean_macro_f1(correlated, br);
    const double i_eps = mean_macro_f1(independent, eps), i_br = mean_macro_f1(independent, br);
    std::ostringstream d;
    d << std::setprecision(4) << "correlated EPS " << c_eps << " BR " << c_br << " diff " << c_eps - c_br << " >= "
      << kCorrMinAdvantage << "; independent EPS " << i_eps << " BR " << i_br << " |diff| " << std::abs(i_eps - i_br)
      << " <= " << kIndepMaxGap;
    return {c_eps - c_br >= kCorrMinAdvantage && std::abs(i_eps - i_br) <= kIndepMaxGap, d.str()};
}

Outcome pipeline_determinism() {
    srmforge::testing::TempDir tmp("accept-determinism");
    std::string args = "pipeline --project \"" + srmforge::testing::fixture("taint").string() + "\" --dataset \"" +
                       srmforge::testing::data_file("srm_dataset.json").string() + "\" --out-dir ";
    int a = run_cli(args + "\"" + (tmp.path() / "a").string() + "\"", tmp.path() / "a.log");
    int b = run_cli(args + "\"" + (tmp.path() / "b").string() + "\"", tmp.path() / "b.log");
    if (a != 0 || b != 0) return {false, "exit codes " + std::to_string(a) + ", " + std::to_string(b)};
    auto sa = srmforge::testing::read_file(tmp.path() / "a/findings.sarif");
    auto sb = srmforge::testing::read_file(tmp.path() / "b/findings.sarif");
    auto doc = json::parse(sa);
    auto problems = sarif::validate_sarif(doc);
    std::ostringstream d;
    d << sa.size() << " bytes, " << (sa == sb ? "identical" : "DIFFERENT") << ", version " << doc["version"]
      << ", " << doc["runs"][0]["results"].size() << " results, " << problems.size() << " validator problems";
    return {sa == sb && problems.empty() && doc["version"] == "2.1.0", d.str()};
}

void collect_calls(const std::vector<program::Statement>& body, std::vector<program::CallSite>& out) {
    for (const auto& st : body) {
        if (st.call) out.push_back(*st.call);
        collect_calls(st.children, out);
        collect_calls(st.else_children, out);
        for (const auto& h : st.handlers) collect_calls(h.body, out);
        collect_calls(st.finally_children, out);
    }
}

/// A pattern matching `c`: its resolved signature, or a placeholder owner with the same name and arity.
std::optional<std::string> pattern_for(const program::CallSite& c) {
    if (c.is_constructor()) return std::nullopt;
    if (c.resolved_signature) return c.resolved_signature;
    std::string sig = "zz.Unknown." + c.callee_name + "(";
    for (std::size_t i = 0; i < c.arity(); ++i) sig += i ? ",Object" : "Object";
    return sig + ")";
}

Outcome taint_monotonicity() {
    auto specs = spec::generate_specs(dataset::load_dataset_file(srmforge::testing::data_file("srm_dataset.json"))).specs;
    std::size_t programs = 0, variants = 0, violations = 0, base_findings = 0;
    for (int i = 1; i <= 10; ++i) {
        std::ostringstream dir;
        dir << "taint/p" << std::setw(2) << std::setfill('0') << i;
        auto p = program::index_program(program::load_project(srmforge::testing::fixture(dir.str()))).program;
        ++programs;
        auto keys = [&](const std::vector<spec::TaintSpec>& s) {
            std::set<decltype(taint::Finding{}.key())> out;
            for (const auto& f : taint::analyze_program(p, s)) out.insert(f.key());
            return out;
        };
        auto base = keys(specs);
        base_findings += base.size();
        std::vector<program::CallSite> calls;
        for (const auto* m : p.methods()) collect_calls(m->body, calls);
        std::set<std::string> patterns;
        for (const auto& c : calls)
            if (auto pat = pattern_for(c)) patterns.insert(*pat);
        for (const auto& pat : patterns) {
            const spec::MethodPattern mp{pat, spec::MatchMode::exact};
            auto with = [&](auto edit) {
                auto s = specs;
                for (auto& one : s) edit(one);
                return keys(s);
            };
            auto sanitized = with([&](spec::TaintSpec& s) { s.sanitizers.push_back({mp, {}, spec::FlowOut::return_value()}); });
            auto sourced = with([&](spec::TaintSpec& s) { s.sources.push_back({mp, spec::FlowOut::return_value()}); });
            auto sunk = with([&](spec::TaintSpec& s) { s.sinks.push_back({mp, {}}); });
            variants += 3;
            if (!std::includes(base.begin(), base.end(), sanitized.begin(), sanitized.end())) ++violations;
            if (!std::includes(sourced.begin(), sourced.end(), base.begin(), base.end())) ++violations;
            if (!std::includes(sunk.begin(), sunk.end(), base.begin(), base.end())) ++violations;
        }
    }
    std::ostringstream d;
    d << programs << " programs, " << variants << " spec variants, " << base_findings << " baseline findings, "
      << violations << " violations";
    return {programs == 10 && variants > 0 && violations == 0, d.str()};
}

Outcome arff_round_trip() {
    auto t = pipeline::training_matrix(dataset::load_dataset_file(srmforge::testing::data_file("srm_dataset.json")));
    std::vector<arff::LabeledRow> rows;
    for (std::size_t i = 0; i < t.size(); ++i) rows.emplace_back(t.rows[i], t.labels[i]);
    auto text = arff::emit(rows, t.schema);
    auto doc = arff::parse(text);
    auto back = arff::read_labeled(text, t.schema);
    std::ostringstream d;
    d << doc.attributes.size() << " attributes (" << arff::label_count_marker(doc.relation) << " labels), "
      << back.size() << " rows, " << (back == rows ? "identical" : "DIFFERENT") << " after read-back";
    return {doc.attributes.size() == kArffAttributes && arff::label_count_marker(doc.relation) == 10 && back == rows &&
                arff::emit(back, t.schema) == text,
            d.str()};
}

Outcome workflow_consolidation() {
    srmforge::testing::TempDir tmp("accept-workflow");
    tmp.write("dataset.json", dataset::save_dataset(servlet_dataset(false)));
    const fs::path out = tmp.path() / "out";
    int code = run_cli("pipeline --project \"" + srmforge::testing::fixture("servlet/mutant").string() +
                           "\" --dataset \"" + (tmp.path() / "dataset.json").string() + "\" --out-dir \"" +
                           out.string() + "\"",
                       tmp.path() / "log.txt");
    auto log = srmforge::testing::read_file(tmp.path() / "log.txt");
    std::size_t pos = 0, stages = 0;
    for (auto s : pipeline::kStages) {
        auto at = log.find("[" + std::string(s) + "]", pos);
        if (at == std::string::npos) break;
        pos = at;
        ++stages;
    }
    // export, specgen, configure, run, report
    const char* tasks[] = {"features.arff", "specs.json", "analysis-config.json", "findings.json", "findings.sarif"};
    std::size_t present = 0;
    for (auto name : pipeline::kArtifacts)
        if (fs::is_regular_file(out / name) && fs::file_size(out / name) > 0) ++present;
    std::size_t task_outputs = 0;
    for (auto t : tasks)
        if (fs::is_regular_file(out / t)) ++task_outputs;
    std::ostringstream d;
    d << "1 invocation, exit " << code << ", " << stages << "/" << pipeline::kStages.size() << " stages in order, "
      << present << "/" << pipeline::kArtifacts.size() << " artifacts, " << task_outputs << "/5 task outputs";
    return {code == 0 && stages == pipeline::kStages.size() && present == pipeline::kArtifacts.size() &&
                task_outputs == 5,
            d.str()};
}

} // namespace

int main() {
    criterion("servlet-end-to-end", kServletSeconds, servlet_end_to_end);
    criterion("f1-harmonic-mean", 0, f1_arithmetic);
    criterion("logistic-gradient-check", kGradientSeconds, gradient_check);
    criterion("pruned-sets-oracle", kPruneSeconds, pruned_sets_oracle);
    criterion("correlation-advantage", kCorrSeconds, correlation_advantage);
    criterion("pipeline-determinism-sarif", 0, pipeline_determinism);
    criterion("taint-monotonicity", 0, taint_monotonicity);
    criterion("arff-round-trip-129", 0, arff_round_trip);
    criterion("workflow-consolidation", 0, workflow_consolidation);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
