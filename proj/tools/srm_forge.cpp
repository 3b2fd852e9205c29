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

// srm-forge command line front end.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"
#include "srmforge/arff.hpp"
#include "srmforge/dataset.hpp"
#include "srmforge/ml/evaluation.hpp"
#include "srmforge/pipeline.hpp"
#include "srmforge/sarif.hpp"
#include "srmforge/service.hpp"
#include "srmforge/spec.hpp"
#include "srmforge/taint.hpp"

using namespace srmforge;
using nlohmann::json;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitError = 2;

// ---- shared option groups -------------------------------------------------

struct ModelFlags {
    std::string kind = "eps";
    std::string base = "logistic";
    int p = 1;
    int m = 10;
    double t = 0.5;
    double sample_fraction = 0.63;
    std::uint64_t seed = 1;
    double learning_rate = ml::LogisticParams{}.learning_rate;
    double l2 = ml::LogisticParams{}.l2;
    int epochs = ml::LogisticParams{}.epochs;
    int max_depth = ml::TreeParams{}.max_depth;
    int min_leaf = ml::TreeParams{}.min_leaf;

    void add(CLI::App* app) {
        app->add_option("--kind", kind, "Multi-label method: br, ps or eps")->capture_default_str();
        app->add_option("--base", base, "Base learner: logistic or tree")->capture_default_str();
        app->add_option("-p,--prune", p, "Pruning threshold")->capture_default_str();
        app->add_option("-m,--members", m, "Ensemble members")->capture_default_str();
        app->add_option("-t,--threshold", t, "Ensemble vote threshold")->capture_default_str();
        app->add_option("--sample-fraction", sample_fraction, "Rows drawn per ensemble member")->capture_default_str();
        app->add_option("--seed", seed, "Random seed")->capture_default_str();
        app->add_option("--learning-rate", learning_rate)->capture_default_str();
        app->add_option("--l2", l2)->capture_default_str();
        app->add_option("--epochs", epochs)->capture_default_str();
        app->add_option("--max-depth", max_depth)->capture_default_str();
        app->add_option("--min-leaf", min_leaf)->capture_default_str();
    }

    ml::ModelConfig config() const {
        ml::ModelConfig c;
        auto k = ml::parse_model_kind(kind);
        if (!k) throw Error("unknown model kind '" + kind + "'");
        c.kind = *k;
        if (base == "logistic") {
            c.base = ml::BaseLearner::logistic_regression({learning_rate, l2, epochs});
        } else if (base == "tree") {
            c.base = ml::BaseLearner::decision_tree({max_depth, min_leaf});
        } else {
            throw Error("unknown base learner '" + base + "'");
        }
        c.p = p;
        c.m = m;
        c.t = t;
        c.sample_fraction = sample_fraction;
        c.seed = seed;
        c.validate();
        return c;
    }
};

struct AnalysisFlags {
    int depth = taint::AnalysisConfig{}.max_call_depth;
    std::string match_mode = "exact";

    void add(CLI::App* app) {
        app->add_option("--depth", depth, "Maximum call depth for method summaries")->capture_default_str();
        app->add_option("--match-mode", match_mode, "Call matching: exact or name_and_arity")->capture_default_str();
    }

    taint::AnalysisConfig config() const {
        taint::AnalysisConfig c;
        if (depth < 0) throw Error("--depth must be >= 0");
        c.max_call_depth = depth;
        auto mm = spec::parse_match_mode(match_mode);
        if (!mm) throw Error("unknown match mode '" + match_mode + "'");
        c.match_mode = *mm;
        return c;
    }
};

/// Training rows from `--arff`, or from `--dataset` with features taken from `--project` when given.
struct MatrixInput {
    std::string arff;
    std::string dataset;
    std::string project;

    void add(CLI::App* app) {
        auto* a = app->add_option("--arff", arff, "Labeled ARFF file");
        auto* d = app->add_option("--dataset", dataset, "SRM dataset file");
        a->excludes(d);
        app->add_option("--project", project, "Project root used for dataset features");
    }

    ml::TrainingMatrix load() const {
        if (!arff.empty()) {
            ml::TrainingMatrix t;
            t.schema = features::default_schema();
            for (auto& [x, y] : arff::read_labeled(pipeline::read_text_file(arff), t.schema)) {
                t.rows.push_back(std::move(x));
                t.labels.push_back(y);
            }
            return t;
        }
        if (dataset.empty()) throw Error("one of --arff or --dataset is required");
        auto d = dataset::load_dataset_file(dataset);
        if (project.empty()) return pipeline::training_matrix(d);
        auto p = program::index_program(program::load_project(project)).program;
        return pipeline::training_matrix(d, &p);
    }
};

std::optional<std::vector<Label>> parse_cwes(const std::vector<std::string>& ids) {
    if (ids.empty()) return std::nullopt;
    std::vector<Label> out;
    for (const auto& id : ids) {
        auto l = parse_label(id);
        if (!l || !is_cwe(*l)) throw Error("'" + id + "' is not a CWE label id");
        out.push_back(*l);
    }
    return out;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        pipeline::write_file_atomic(path, text);
    }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

program::ProgramModel load_program(const std::string& root) {
    auto indexed = program::index_program(program::load_project(root));
    for (const auto& d : indexed.diagnostics) std::cerr << d.str() << "\n";
    return std::move(indexed.program);
}

// ---- --config -------------------------------------------------------------

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number() || v.is_null()) return v.dump();
    throw Error("config values must be scalars or arrays of scalars");
}

/// Values in the JSON object replace whatever the matching long flags were given on the command line.
void apply_config(CLI::App* app, const std::string& path) {
    json j;
    try {
        j = json::parse(pipeline::read_text_file(path));
    } catch (const json::exception& e) {
        throw FormatError(path, e.what());
    }
    if (!j.is_object()) throw FormatError(path, "config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        auto* opt = app->get_option_no_throw("--" + key);
        if (!opt || key == "config") throw FormatError(path + "/" + key, "not an option of '" + app->get_name() + "'");
        opt->clear();
        if (value.is_array()) {
            for (const auto& v : value) opt->add_result(scalar_text(v));
        } else {
            opt->add_result(scalar_text(value));
        }
        opt->run_callback();
    }
}

// ---- commands -------------------------------------------------------------

struct Cli {
    CLI::App app{"srm-forge: learn security-relevant methods and run taint analysis with them"};
    std::vector<std::pair<CLI::App*, std::function<int()>>> handlers;
    std::map<CLI::App*, std::string> config_paths;
    std::map<CLI::App*, std::vector<CLI::Option*>> required;

    /// Checked after --config is applied so a config file can supply it.
    void require(CLI::App* sub, CLI::Option* opt) { required[sub].push_back(opt); }

    CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& desc, std::function<int()> run) {
        auto* sub = parent->add_subcommand(name, desc);
        sub->add_option("--config", config_paths[sub], "JSON file whose keys override the command's flags");
        handlers.emplace_back(sub, std::move(run));
        return sub;
    }
};

ModelFlags train_model_flags;
MatrixInput train_input;
std::string train_out;
int train_search = 0;

int cmd_train() {
    auto t = train_input.load();
    auto cfg = train_model_flags.config();
    if (train_search > 0) {
        auto result = ml::model_search(t, train_search, cfg.seed);
        std::cerr << "search picked " << result.best.id() << "\n";
        cfg = result.best;
    }
    auto trained = pipeline::train_with_fallback(t, cfg);
    for (const auto& d : trained.diagnostics) warn(d);
    for (const auto& d : trained.model.diagnostics) warn(d);
    write_output(train_out, ml::save_model(trained.model));
    return kExitOk;
}

std::string detect_project, detect_dataset, detect_model, detect_out;
ModelFlags detect_model_flags;

int cmd_detect() {
    auto p = load_program(detect_project);
    auto d = dataset::load_dataset_file(detect_dataset);
    ml::MultiLabelModel model;
    if (!detect_model.empty()) {
        model = ml::load_model(pipeline::read_text_file(detect_model));
    } else {
        auto trained = pipeline::train_with_fallback(pipeline::training_matrix(d, &p), detect_model_flags.config());
        for (const auto& w : trained.diagnostics) warn(w);
        model = std::move(trained.model);
    }
    auto detected = pipeline::detect_methods(p, model);
    std::cerr << detected.size() << " of " << p.methods().size() << " project methods flagged\n";
    write_output(detect_out, dataset::save_dataset(dataset::merge_detected(d, detected)));
    return kExitOk;
}

std::string specgen_dataset, specgen_out;
std::vector<std::string> specgen_cwes;

int cmd_specgen() {
    auto d = dataset::load_dataset_file(specgen_dataset);
    auto result = spec::generate_specs(d, parse_cwes(specgen_cwes));
    for (const auto& msg : result.diagnostics) warn(msg);
    for (const auto& s : result.specs)
        for (const auto& w : spec::spec_warnings(s)) warn(s.id + ": " + w);
    write_output(specgen_out, spec::save_specs(spec::SpecFile{"1", result.specs}));
    return kExitOk;
}

std::string analyze_project, analyze_specs, analyze_out, analyze_json;
AnalysisFlags analyze_flags;
bool analyze_fail = false;

int cmd_analyze() {
    auto p = load_program(analyze_project);
    auto specs = spec::load_specs_file(analyze_specs).specs;
    auto findings = taint::analyze_program(p, specs, analyze_flags.config());
    write_output(analyze_out, sarif::emit_sarif(findings));
    if (!analyze_json.empty()) write_output(analyze_json, dump(taint::to_json(findings)));
    std::cerr << findings.size() << " finding(s)\n";
    return analyze_fail && !findings.empty() ? kExitFindings : kExitOk;
}

std::string pipeline_project, pipeline_dataset, pipeline_model, pipeline_out;
std::vector<std::string> pipeline_cwes;
AnalysisFlags pipeline_analysis;
ModelFlags pipeline_model_flags;
bool pipeline_fail = false;

int cmd_pipeline() {
    pipeline::PipelineConfig cfg;
    cfg.project_root = pipeline_project;
    cfg.dataset_path = pipeline_dataset;
    if (!pipeline_model.empty()) cfg.model_path = pipeline_model;
    cfg.cwe_filter = parse_cwes(pipeline_cwes);
    cfg.analysis = pipeline_analysis.config();
    cfg.model = pipeline_model_flags.config();
    cfg.output_dir = pipeline_out;
    auto result = pipeline::run_pipeline(cfg, [](std::string_view stage, double) {
        if (stage != "done") std::cerr << "[" << stage << "]\n";
    });
    for (const auto& d : result.diagnostics) warn(d);
    for (const auto& a : result.artifacts) std::cerr << "wrote " << a.string() << "\n";
    std::cerr << result.findings.size() << " finding(s)\n";
    return pipeline_fail && !result.findings.empty() ? kExitFindings : kExitOk;
}

MatrixInput eval_input;
std::string eval_model, eval_out;

int cmd_eval() {
    auto t = eval_input.load();
    auto model = ml::load_model(pipeline::read_text_file(eval_model));
    std::vector<LabelSet> pred;
    for (const auto& x : t.rows) pred.push_back(ml::predict_labels(model, x).labels);
    write_output(eval_out, dump(ml::to_json(ml::evaluate_metrics(pred, t.labels))));
    return kExitOk;
}

std::string serve_project, serve_dataset, serve_out, serve_model, serve_settings, serve_static;
std::string serve_host = "127.0.0.1";
int serve_port = 8080;
httplib::Server* running_server = nullptr;

int cmd_serve() {
    service::ServiceOptions o;
    o.project_root = serve_project;
    o.dataset_path = serve_dataset;
    o.output_dir = serve_out;
    if (!serve_model.empty()) o.model_path = serve_model;
    if (!serve_settings.empty()) o.settings_path = serve_settings;
    service::Service svc(o);
    httplib::Server server;
    svc.mount(server);
    if (!serve_static.empty() && !server.set_mount_point("/", serve_static))
        throw Error("static directory not found: " + serve_static);
    running_server = &server;
    std::signal(SIGINT, [](int) {
        if (running_server) running_server->stop();
    });
    std::signal(SIGTERM, [](int) {
        if (running_server) running_server->stop();
    });
    if (!server.bind_to_port(serve_host, serve_port)) throw Error("cannot listen on " + serve_host + ":" + std::to_string(serve_port));
    std::cerr << "listening on http://" << serve_host << ":" << serve_port << "\n";
    server.listen_after_bind();
    running_server = nullptr;
    return kExitOk;
}

std::string features_project, features_dataset, features_out;

int cmd_features_extract() {
    auto p = load_program(features_project);
    dataset::Dataset d;
    if (!features_dataset.empty()) d = dataset::load_dataset_file(features_dataset);
    write_output(features_out, pipeline::project_arff(p, d));
    return kExitOk;
}

std::string ds_file;
double ds_fraction = 0.7;
std::uint64_t ds_seed = 1;
std::string ds_train_out, ds_test_out;

int cmd_dataset_validate() {
    auto d = dataset::load_dataset_file(ds_file);
    auto ws = dataset::warnings(d);
    for (const auto& w : ws) warn(w);
    std::cout << ds_file << ": " << d.records.size() << " records valid, " << ws.size() << " warning(s)\n";
    return kExitOk;
}

int cmd_dataset_stats() {
    std::cout << dump(dataset::to_json(dataset::dataset_stats(dataset::load_dataset_file(ds_file))));
    return kExitOk;
}

int cmd_dataset_split() {
    auto [train, test] = dataset::split_dataset(dataset::load_dataset_file(ds_file), ds_fraction, ds_seed);
    write_output(ds_train_out, dataset::save_dataset(train));
    write_output(ds_test_out, dataset::save_dataset(test));
    std::cerr << train.records.size() << " train / " << test.records.size() << " test records\n";
    return kExitOk;
}

MatrixInput ml_predict_input;
std::string ml_predict_model, ml_predict_out;

int cmd_ml_predict() {
    auto model = ml::load_model(pipeline::read_text_file(ml_predict_model));
    auto rows = ordered_json::array();
    auto emit = [&](ordered_json id, const features::FeatureVector& x) {
        auto pred = ml::predict_labels(model, x);
        ordered_json scores;
        for (std::size_t i = 0; i < kLabelCount; ++i) scores[std::string(kLabelIds[i])] = pred.scores[i];
        id["labels"] = pred.labels.ids();
        id["scores"] = scores;
        rows.push_back(std::move(id));
    };
    if (ml_predict_input.arff.empty() && ml_predict_input.dataset.empty()) {
        if (ml_predict_input.project.empty()) throw Error("one of --arff, --dataset or --project is required");
        auto p = load_program(ml_predict_input.project);
        for (const auto* m : p.methods())
            emit({{"signature", program::canonical_signature(*m)}}, features::extract_features(*m, p));
    } else if (!ml_predict_input.dataset.empty()) {
        auto d = dataset::load_dataset_file(ml_predict_input.dataset);
        auto t = ml_predict_input.load();
        std::size_t i = 0;
        for (const auto& r : d.records)
            if (r.discovery != dataset::Discovery::detected) emit({{"signature", r.signature}}, t.rows[i++]);
    } else {
        auto t = ml_predict_input.load();
        for (std::size_t i = 0; i < t.size(); ++i) emit({{"row", i}}, t.rows[i]);
    }
    write_output(ml_predict_out, dump(rows));
    return kExitOk;
}

MatrixInput ml_cv_input;
ModelFlags ml_cv_flags;
int ml_cv_k = 10;
std::string ml_cv_protocol = "kfold", ml_cv_out;
double ml_cv_train_fraction = 0.7;

int cmd_ml_cv() {
    auto protocol = ml::parse_protocol(ml_cv_protocol);
    if (!protocol) throw Error("unknown protocol '" + ml_cv_protocol + "'");
    auto cfg = ml_cv_flags.config();
    auto r = ml::cross_validate(ml_cv_input.load(), cfg, ml_cv_k, cfg.seed, *protocol, ml_cv_train_fraction);
    write_output(ml_cv_out, dump(ml::to_json(r)));
    return kExitOk;
}

MatrixInput ml_search_input;
int ml_search_budget = 44;
std::uint64_t ml_search_seed = 1;
std::string ml_search_out;

int cmd_ml_search() {
    auto r = ml::model_search(ml_search_input.load(), ml_search_budget, ml_search_seed);
    write_output(ml_search_out, dump(ml::to_json(r)));
    return kExitOk;
}

void build(Cli& cli) {
    auto& app = cli.app;
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(SRMFORGE_VERSION));

    auto add_train = [&](CLI::App* parent) {
        auto* sub = cli.leaf(parent, "train", "Train a multi-label SRM model", cmd_train);
        train_input.add(sub);
        train_model_flags.add(sub);
        sub->add_option("-o,--out", train_out, "Model file (default stdout)");
        sub->add_option("--search", train_search, "Run a model search with this budget first");
    };
    auto add_eval = [&](CLI::App* parent) {
        auto* sub = cli.leaf(parent, "eval", "Score a model against labeled rows", cmd_eval);
        eval_input.add(sub);
        cli.require(sub, sub->add_option("--model", eval_model, "Model file"));
        sub->add_option("-o,--out", eval_out, "Metrics file (default stdout)");
    };

    auto* detect = cli.leaf(&app, "detect", "Flag project methods as SRMs and merge them into the dataset", cmd_detect);
    cli.require(detect, detect->add_option("--project", detect_project, "Project root"));
    cli.require(detect, detect->add_option("--dataset", detect_dataset, "SRM dataset"));
    detect->add_option("--model", detect_model, "Model file (trained from the dataset when absent)");
    detect->add_option("-o,--out", detect_out, "Merged dataset (default stdout)");
    detect_model_flags.add(detect);

    add_train(&app);

    auto* specgen = cli.leaf(&app, "specgen", "Generate taint specifications from a dataset", cmd_specgen);
    cli.require(specgen, specgen->add_option("--dataset", specgen_dataset, "SRM dataset"));
    specgen->add_option("-o,--out", specgen_out, "Spec file (default stdout)");
    specgen->add_option("--cwe", specgen_cwes, "Only these CWEs, e.g. cwe89,cwe79")->delimiter(',');

    auto* analyze = cli.leaf(&app, "analyze", "Run the taint analysis and write SARIF", cmd_analyze);
    cli.require(analyze, analyze->add_option("--project", analyze_project, "Project root"));
    cli.require(analyze, analyze->add_option("--specs", analyze_specs, "Spec file"));
    analyze->add_option("-o,--out", analyze_out, "SARIF file (default stdout)");
    analyze->add_option("--findings-json", analyze_json, "Also write findings as JSON");
    analyze->add_flag("--fail-on-findings", analyze_fail, "Exit with 1 when anything is found");
    analyze_flags.add(analyze);

    auto* pipe = cli.leaf(&app, "pipeline", "Detect, generate specs, analyze and report in one run", cmd_pipeline);
    cli.require(pipe, pipe->add_option("--project", pipeline_project, "Project root"));
    cli.require(pipe, pipe->add_option("--dataset", pipeline_dataset, "SRM dataset"));
    pipe->add_option("--model", pipeline_model, "Model file (trained from the dataset when absent)");
    cli.require(pipe, pipe->add_option("-o,--out-dir", pipeline_out, "Directory for all artifacts"));
    pipe->add_option("--cwe", pipeline_cwes, "Only these CWEs, e.g. cwe89,cwe79")->delimiter(',');
    pipe->add_flag("--fail-on-findings", pipeline_fail, "Exit with 1 when anything is found");
    pipeline_analysis.add(pipe);
    pipeline_model_flags.add(pipe);

    add_eval(&app);

    auto* serve = cli.leaf(&app, "serve", "Serve the HTTP API for the review UI", cmd_serve);
    cli.require(serve, serve->add_option("--project", serve_project, "Project root"));
    cli.require(serve, serve->add_option("--dataset", serve_dataset, "SRM dataset, edited in place"));
    cli.require(serve, serve->add_option("-o,--out-dir", serve_out, "Directory for job artifacts"));
    serve->add_option("--model", serve_model, "Model file");
    serve->add_option("--settings", serve_settings, "Settings file (default <project>/.srm-forge/settings.json)");
    serve->add_option("--static", serve_static, "Directory with the built UI to serve at /");
    serve->add_option("--host", serve_host)->capture_default_str();
    serve->add_option("--port", serve_port)->capture_default_str();

    auto* features = app.add_subcommand("features", "Feature extraction")->require_subcommand(1);
    auto* extract = cli.leaf(features, "extract", "Write project methods as labeled ARFF", cmd_features_extract);
    cli.require(extract, extract->add_option("--project", features_project, "Project root"));
    extract->add_option("--dataset", features_dataset, "Dataset supplying labels for known signatures");
    extract->add_option("-o,--out", features_out, "ARFF file (default stdout)");

    auto* ds = app.add_subcommand("dataset", "SRM dataset tools")->require_subcommand(1);
    auto* validate = cli.leaf(ds, "validate", "Check a dataset file", cmd_dataset_validate);
    cli.require(validate, validate->add_option("file", ds_file));
    auto* stats = cli.leaf(ds, "stats", "Label statistics", cmd_dataset_stats);
    cli.require(stats, stats->add_option("file", ds_file));
    auto* split = cli.leaf(ds, "split", "Seeded train/test split", cmd_dataset_split);
    cli.require(split, split->add_option("file", ds_file));
    split->add_option("--train-fraction", ds_fraction)->capture_default_str();
    split->add_option("--seed", ds_seed)->capture_default_str();
    cli.require(split, split->add_option("--train-out", ds_train_out));
    cli.require(split, split->add_option("--test-out", ds_test_out));

    auto* mlapp = app.add_subcommand("ml", "Multi-label learning tools")->require_subcommand(1);
    add_train(mlapp);
    auto* predict = cli.leaf(mlapp, "predict", "Predict label sets with a model", cmd_ml_predict);
    ml_predict_input.add(predict);
    cli.require(predict, predict->add_option("--model", ml_predict_model, "Model file"));
    predict->add_option("-o,--out", ml_predict_out, "Predictions (default stdout)");
    add_eval(mlapp);
    auto* cv = cli.leaf(mlapp, "cv", "Cross-validate a model configuration", cmd_ml_cv);
    ml_cv_input.add(cv);
    ml_cv_flags.add(cv);
    cv->add_option("-k,--folds", ml_cv_k)->capture_default_str();
    cv->add_option("--protocol", ml_cv_protocol, "kfold or holdout")->capture_default_str();
    cv->add_option("--train-fraction", ml_cv_train_fraction, "Holdout train share")->capture_default_str();
    cv->add_option("-o,--out", ml_cv_out, "Result file (default stdout)");
    auto* search = cli.leaf(mlapp, "search", "Grid search over model configurations", cmd_ml_search);
    ml_search_input.add(search);
    search->add_option("--budget", ml_search_budget)->capture_default_str();
    search->add_option("--seed", ml_search_seed)->capture_default_str();
    search->add_option("-o,--out", ml_search_out, "Leaderboard file (default stdout)");
}

} // namespace

int main(int argc, char** argv) {
    Cli cli;
    build(cli);
    try {
        cli.app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return cli.app.exit(e) == 0 ? kExitOk : kExitError;
    }
    try {
        for (auto& [sub, run] : cli.handlers) {
            if (!sub->parsed()) continue;
            const auto& cfg = cli.config_paths[sub];
            if (!cfg.empty()) apply_config(sub, cfg);
            for (const auto* opt : cli.required[sub])
                if (opt->count() == 0) throw Error(opt->get_name() + " is required");
            return run();
        }
        std::cerr << "srm-forge: no command given\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "srm-forge: error: " << e.what() << "\n";
        return kExitError;
    }
}
