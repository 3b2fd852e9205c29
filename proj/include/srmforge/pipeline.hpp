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

#include <array>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "srmforge/dataset.hpp"
#include "srmforge/error.hpp"
#include "srmforge/features.hpp"
#include "srmforge/ml/multilabel.hpp"
#include "srmforge/program_model.hpp"
#include "srmforge/spec.hpp"
#include "srmforge/taint.hpp"

namespace srmforge::pipeline {

struct PipelineConfig {
    std::filesystem::path project_root;
    std::filesystem::path dataset_path;
    std::optional<std::filesystem::path> model_path; ///< trained from the dataset when absent
    std::optional<std::vector<Label>> cwe_filter;
    taint::AnalysisConfig analysis;
    std::filesystem::path output_dir;
    ml::ModelConfig model; ///< used only when training

    /// Throws Error when a required path is missing or the model config is invalid.
    void validate() const;
};

nlohmann::ordered_json to_json(const PipelineConfig& c);
/// Relative paths are resolved against `base`. Unknown keys are rejected.
PipelineConfig pipeline_config_from_json(const nlohmann::json& j, const std::filesystem::path& base = {});

/// A pipeline stage failed; `what()` reads "<stage>: <cause>".
class StageError : public Error {
public:
    StageError(std::string stage, std::string cause)
        : Error(stage + ": " + cause), stage_(std::move(stage)), cause_(std::move(cause)) {}
    const std::string& stage() const noexcept { return stage_; }
    const std::string& cause() const noexcept { return cause_; }

private:
    std::string stage_;
    std::string cause_;
};

/// Raised from a progress callback to stop a run between stages.
class Cancelled : public Error {
public:
    Cancelled() : Error("cancelled") {}
};

inline constexpr std::array<std::string_view, 8> kStages = {"parse",   "features", "model",   "detect",
                                                             "specgen", "configure", "analyze", "report"};

inline constexpr std::array<std::string_view, 7> kArtifacts = {
    "features.arff", "model.json", "srm-dataset.json", "specs.json", "analysis-config.json", "findings.json",
    "findings.sarif"};

struct PipelineResult {
    dataset::Dataset dataset;
    std::vector<spec::TaintSpec> specs;
    std::vector<taint::Finding> findings;
    std::filesystem::path sarif_path;
    std::vector<std::filesystem::path> artifacts;
    std::vector<std::string> diagnostics;
};

/// Called before each stage with its name and the fraction of stages already completed.
using ProgressFn = std::function<void(std::string_view stage, double fraction)>;

/// parse -> features -> model -> detect/merge -> specgen -> configure -> analyze -> report.
/// Artifacts are written as `<name>.partial` and renamed once every stage has succeeded.
PipelineResult run_pipeline(const PipelineConfig& cfg, const ProgressFn& progress = {});

/// Training rows from training and manual records. Records whose method is defined in `project`
/// use the real method model; the rest use a body-less stub built from the signature.
ml::TrainingMatrix training_matrix(const dataset::Dataset& d, const program::ProgramModel* project = nullptr);

struct TrainOutcome {
    ml::MultiLabelModel model;
    std::vector<std::string> diagnostics;
};

/// Trains `config`; when pruning leaves nothing to learn, retrains as binary relevance with the
/// same base learner and says so in the diagnostics.
TrainOutcome train_with_fallback(const ml::TrainingMatrix& t, const ml::ModelConfig& config);

/// One detected record per project method with a non-empty predicted label set, scores attached.
std::vector<dataset::MethodRecord> detect_methods(const program::ProgramModel& p, const ml::MultiLabelModel& model);

/// Labeled ARFF rows for every project method; labels come from `d` when the signature is known.
std::string project_arff(const program::ProgramModel& p, const dataset::Dataset& d);

/// Writes `content` to `path` through a temporary file in the same directory.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

} // namespace srmforge::pipeline
