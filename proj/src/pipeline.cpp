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

#include "srmforge/pipeline.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "srmforge/arff.hpp"
#include "srmforge/sarif.hpp"
#include "srmforge/signature.hpp"

namespace srmforge::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

void PipelineConfig::validate() const {
    if (project_root.empty() || !fs::is_directory(project_root))
        throw Error("project root is not a directory: " + project_root.string());
    if (dataset_path.empty() || !fs::is_regular_file(dataset_path))
        throw Error("dataset file not found: " + dataset_path.string());
    if (model_path && !fs::is_regular_file(*model_path)) throw Error("model file not found: " + model_path->string());
    if (output_dir.empty()) throw Error("output directory is required");
    if (analysis.max_call_depth < 0) throw Error("maxCallDepth must be >= 0");
    model.validate();
}

ordered_json to_json(const PipelineConfig& c) {
    ordered_json j;
    j["projectRoot"] = c.project_root.generic_string();
    j["dataset"] = c.dataset_path.generic_string();
    j["model"] = c.model_path ? json(c.model_path->generic_string()) : json(nullptr);
    if (c.cwe_filter) {
        auto a = json::array();
        for (Label l : *c.cwe_filter) a.push_back(std::string(label_id(l)));
        j["cwes"] = a;
    } else {
        j["cwes"] = nullptr;
    }
    j["analysis"] = taint::to_json(c.analysis);
    j["outputDir"] = c.output_dir.generic_string();
    j["modelConfig"] = ml::to_json(c.model);
    return j;
}

namespace {

fs::path resolve(const json& v, const fs::path& base, const std::string& where) {
    if (!v.is_string()) throw FormatError(where, "expected a path string");
    fs::path p = v.get<std::string>();
    return p.is_relative() && !base.empty() ? base / p : p;
}

} // namespace

PipelineConfig pipeline_config_from_json(const json& j, const fs::path& base) {
    if (!j.is_object()) throw FormatError("", "pipeline config must be an object");
    static const std::set<std::string> known = {"projectRoot", "dataset",     "model",      "cwes",
                                                "analysis",    "outputDir",   "modelConfig"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw FormatError("/" + k, "unknown key");
    PipelineConfig c;
    if (j.contains("projectRoot")) c.project_root = resolve(j["projectRoot"], base, "/projectRoot");
    if (j.contains("dataset")) c.dataset_path = resolve(j["dataset"], base, "/dataset");
    if (j.contains("model") && !j["model"].is_null()) c.model_path = resolve(j["model"], base, "/model");
    if (j.contains("outputDir")) c.output_dir = resolve(j["outputDir"], base, "/outputDir");
    if (j.contains("cwes") && !j["cwes"].is_null()) {
        if (!j["cwes"].is_array()) throw FormatError("/cwes", "expected an array of CWE label ids");
        std::vector<Label> cwes;
        for (std::size_t i = 0; i < j["cwes"].size(); ++i) {
            const auto& v = j["cwes"][i];
            auto l = v.is_string() ? parse_label(v.get<std::string>()) : std::nullopt;
            if (!l || !is_cwe(*l)) throw FormatError("/cwes/" + std::to_string(i), "not a CWE label id");
            cwes.push_back(*l);
        }
        c.cwe_filter = cwes;
    }
    try {
        if (j.contains("analysis")) c.analysis = taint::analysis_config_from_json(j["analysis"]);
    } catch (const FormatError& e) {
        throw FormatError("/analysis" + e.path(), e.reason());
    }
    try {
        if (j.contains("modelConfig")) c.model = ml::model_config_from_json(j["modelConfig"]);
    } catch (const FormatError& e) {
        throw FormatError("/modelConfig" + e.path(), e.reason());
    }
    return c;
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

namespace {

features::FeatureVector record_features(const std::string& signature, const program::ProgramModel* project) {
    if (project) {
        if (const auto* m = project->find_method(signature)) return features::extract_features(*m, *project);
    }
    auto sig = parse_signature(signature);
    if (!sig) throw FormatError(signature, "not a canonical signature");
    auto stub = features::stub_program(*sig);
    return features::extract_features(*stub.methods().at(0), stub);
}

} // namespace

ml::TrainingMatrix training_matrix(const dataset::Dataset& d, const program::ProgramModel* project) {
    ml::TrainingMatrix t;
    t.schema = features::default_schema();
    for (const auto& r : d.records) {
        if (r.discovery == dataset::Discovery::detected) continue;
        t.rows.push_back(record_features(r.signature, project));
        t.labels.push_back(r.labels);
    }
    return t;
}

TrainOutcome train_with_fallback(const ml::TrainingMatrix& t, const ml::ModelConfig& config) {
    if (t.size() == 0) throw TooFewRows("the dataset has no training or manual records");
    try {
        return {ml::train_model(t, config), {}};
    } catch (const EmptyAfterPruning& e) {
        if (config.kind == ml::ModelKind::binary_relevance) throw;
        ml::ModelConfig br = config;
        br.kind = ml::ModelKind::binary_relevance;
        TrainOutcome out{ml::train_model(t, br), {}};
        out.diagnostics.push_back(config.id() + " could not be trained (" + e.what() + "); fell back to " + br.id());
        return out;
    }
}

std::vector<dataset::MethodRecord> detect_methods(const program::ProgramModel& p, const ml::MultiLabelModel& model) {
    std::vector<dataset::MethodRecord> out;
    for (const auto* m : p.methods()) {
        auto pred = ml::predict_labels(model, features::extract_features(*m, p));
        if (pred.labels.empty()) continue;
        dataset::MethodRecord r;
        r.signature = program::canonical_signature(*m);
        r.labels = pred.labels;
        r.discovery = dataset::Discovery::detected;
        r.scores = pred.scores;
        out.push_back(std::move(r));
    }
    return out;
}

std::string project_arff(const program::ProgramModel& p, const dataset::Dataset& d) {
    std::vector<arff::LabeledRow> rows;
    for (const auto* m : p.methods()) {
        const auto* r = d.find(program::canonical_signature(*m));
        rows.emplace_back(features::extract_features(*m, p), r ? r->labels : LabelSet{});
    }
    return arff::emit(rows, features::default_schema());
}

namespace {

class ArtifactWriter {
public:
    explicit ArtifactWriter(fs::path dir) : dir_(std::move(dir)) {
        fs::create_directories(dir_);
        for (auto name : kArtifacts) {
            fs::remove(dir_ / name);
            fs::remove(partial(name));
        }
    }

    void write(std::string_view name, std::string_view content) {
        write_file_atomic(partial(name), content);
        written_.emplace_back(name);
    }

    std::vector<fs::path> commit() {
        std::vector<fs::path> out;
        for (const auto& name : written_) {
            fs::rename(partial(name), dir_ / name);
            out.push_back(dir_ / name);
        }
        return out;
    }

private:
    fs::path partial(std::string_view name) const { return dir_ / (std::string(name) + ".partial"); }

    fs::path dir_;
    std::vector<std::string> written_;
};

} // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg, const ProgressFn& progress) {
    try {
        cfg.validate();
    } catch (const Error& e) {
        throw StageError("config", e.what());
    }

    PipelineResult result;
    ArtifactWriter out(cfg.output_dir);
    std::size_t stage_no = 0;
    auto stage = [&](std::string_view name, auto&& body) {
        if (progress) progress(name, static_cast<double>(stage_no) / kStages.size());
        ++stage_no;
        try {
            body();
        } catch (const Cancelled&) {
            throw;
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            throw StageError(std::string(name), e.what());
        }
    };

    program::ProgramModel project;
    dataset::Dataset base;
    ml::TrainingMatrix training;
    ml::MultiLabelModel model;

    stage("parse", [&] {
        auto indexed = program::index_program(program::load_project(cfg.project_root));
        project = std::move(indexed.program);
        for (const auto& d : indexed.diagnostics) result.diagnostics.push_back(d.str());
        base = dataset::load_dataset_file(cfg.dataset_path.string());
    });
    stage("features", [&] {
        training = training_matrix(base, &project);
        std::vector<arff::LabeledRow> rows;
        for (std::size_t i = 0; i < training.size(); ++i) rows.emplace_back(training.rows[i], training.labels[i]);
        out.write("features.arff", arff::emit(rows, training.schema));
    });
    stage("model", [&] {
        if (cfg.model_path) {
            model = ml::load_model(read_text_file(*cfg.model_path));
            if (model.schema_version != features::default_schema().version)
                throw SchemaMismatch("model was trained on feature schema " + model.schema_version);
        } else {
            auto trained = train_with_fallback(training, cfg.model);
            model = std::move(trained.model);
            for (auto& d : trained.diagnostics) result.diagnostics.push_back(std::move(d));
        }
        out.write("model.json", ml::save_model(model));
    });
    stage("detect", [&] {
        result.dataset = dataset::merge_detected(base, detect_methods(project, model));
        out.write("srm-dataset.json", dataset::save_dataset(result.dataset));
    });
    stage("specgen", [&] {
        auto generated = spec::generate_specs(result.dataset, cfg.cwe_filter);
        result.specs = std::move(generated.specs);
        for (auto& d : generated.diagnostics) result.diagnostics.push_back(std::move(d));
        out.write("specs.json", spec::save_specs(spec::SpecFile{"1", result.specs}));
    });
    stage("configure", [&] { out.write("analysis-config.json", taint::to_json(cfg.analysis).dump(2) + "\n"); });
    stage("analyze", [&] {
        result.findings = taint::analyze_program(project, result.specs, cfg.analysis);
        out.write("findings.json", taint::to_json(result.findings).dump(2) + "\n");
    });
    stage("report", [&] {
        out.write("findings.sarif", sarif::emit_sarif(result.findings));
        result.artifacts = out.commit();
    });
    if (progress) progress("done", 1.0);
    result.sarif_path = cfg.output_dir / "findings.sarif";
    return result;
}

} // namespace srmforge::pipeline
