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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "srmforge/labels.hpp"
#include "srmforge/ml/base_learner.hpp"
#include "srmforge/ml/transform.hpp"

namespace srmforge::ml {

enum class ModelKind { binary_relevance, pruned_sets, ensemble_pruned_sets };

std::string_view to_string(ModelKind k);
std::optional<ModelKind> parse_model_kind(std::string_view s);

/// Everything needed to train one multi-label model.
struct ModelConfig {
    ModelKind kind = ModelKind::ensemble_pruned_sets;
    BaseLearner base;
    int p = 1;                    ///< pruning threshold: sets seen at most p times are infrequent
    int m = 10;                   ///< ensemble members
    double sample_fraction = 0.63; ///< rows drawn without replacement per member
    double t = 0.5;               ///< vote threshold
    std::uint64_t seed = 1;

    /// Stable identifier such as "eps/logistic/p1/m10/t0.5".
    std::string id() const;
    void validate() const;
    friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

nlohmann::ordered_json to_json(const ModelConfig& c);
ModelConfig model_config_from_json(const nlohmann::json& j);

struct PruneResult {
    std::vector<LabelSet> frequent; ///< sorted by key
    std::map<LabelSet, std::vector<LabelSet>> reassignment; ///< infrequent set -> maximal frequent proper subsets
};

/// Frequent sets occur more than p times. Throws Error on empty input.
PruneResult prune_label_sets(const std::vector<LabelSet>& rows, int p);

/// One-vs-rest over label-set classes; class ids are LabelSet keys.
struct PrunedSetsModel {
    std::vector<LabelSet> classes; ///< sorted by key
    std::vector<BinaryModel> scorers; ///< one per class; empty when there is a single class
    std::size_t training_rows = 0;  ///< rows after reassignment
};

struct MultiLabelModel {
    ModelKind kind = ModelKind::binary_relevance;
    ModelConfig config;
    std::string schema_version;
    FeatureTransform transform;
    std::vector<BinaryModel> components;  ///< binary relevance: one per label
    std::vector<PrunedSetsModel> members; ///< pruned sets: exactly one; ensemble: m or fewer
    std::vector<std::string> diagnostics; ///< members skipped during training
};

struct Prediction {
    LabelSet labels;
    std::array<double, kLabelCount> scores{};
};

MultiLabelModel train_binary_relevance(const TrainingMatrix& t, const BaseLearner& base);
/// Throws EmptyAfterPruning when no label set occurs more than p times.
MultiLabelModel train_pruned_sets(const TrainingMatrix& t, const BaseLearner& base, int p);
MultiLabelModel train_ensemble_pruned_sets(const TrainingMatrix& t, const BaseLearner& base, int p, int m,
                                           double sample_fraction, double threshold, std::uint64_t seed);
MultiLabelModel train_model(const TrainingMatrix& t, const ModelConfig& c);

/// Throws SchemaMismatch when x was built for another schema.
Prediction predict_labels(const MultiLabelModel& model, const features::FeatureVector& x);

/// Class chosen by a single pruned-sets member for an already transformed row.
LabelSet predict_member(const PrunedSetsModel& member, const Dense& x);

nlohmann::ordered_json to_json(const MultiLabelModel& m);
MultiLabelModel model_from_json(const nlohmann::json& j);
std::string save_model(const MultiLabelModel& m);
MultiLabelModel load_model(std::string_view text);

} // namespace srmforge::ml
