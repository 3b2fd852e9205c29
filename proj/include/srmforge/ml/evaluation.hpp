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
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "srmforge/labels.hpp"
#include "srmforge/ml/multilabel.hpp"

namespace srmforge::ml {

struct LabelMetrics {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    double accuracy = 0;
    std::size_t support = 0; ///< gold positives
};

struct Metrics {
    std::array<LabelMetrics, kLabelCount> per_label{};
    double macro_precision = 0;
    double macro_recall = 0;
    double macro_f1 = 0;
    double micro_f1 = 0;
    double subset_accuracy = 0;
    double hamming_loss = 0;

    /// Flat (name, value) view used for averaging and reporting.
    std::vector<std::pair<std::string, double>> fields() const;
    static Metrics from_fields(const std::vector<double>& values);
};

/// Harmonic mean; 0 when both are 0.
double f1_score(double precision, double recall);

/// Throws LengthMismatch on unequal or empty inputs.
Metrics evaluate_metrics(const std::vector<LabelSet>& pred, const std::vector<LabelSet>& gold);

nlohmann::ordered_json to_json(const Metrics& m);

enum class Protocol { kfold, holdout };
std::string_view to_string(Protocol p);
std::optional<Protocol> parse_protocol(std::string_view s);

using Predictor = std::function<LabelSet(const features::FeatureVector&)>;
using Trainer = std::function<Predictor(const TrainingMatrix&)>;

struct CvResult {
    Protocol protocol = Protocol::kfold;
    int k = 0;
    std::vector<Metrics> folds;
    std::vector<std::vector<std::size_t>> test_indices; ///< per fold
    Metrics mean;
    Metrics stdev; ///< sample standard deviation across folds
};

/// k-fold, or k seeded holdout splits with `train_fraction` of the rows for training.
/// Throws TooFewRows when there are fewer than k rows (holdout: fewer than 2).
CvResult cross_validate(const TrainingMatrix& t, const Trainer& trainer, int k, std::uint64_t seed,
                        Protocol protocol = Protocol::kfold, double train_fraction = 0.7);
CvResult cross_validate(const TrainingMatrix& t, const ModelConfig& config, int k, std::uint64_t seed,
                        Protocol protocol = Protocol::kfold, double train_fraction = 0.7);

nlohmann::ordered_json to_json(const CvResult& r);

struct LeaderboardEntry {
    ModelConfig config;
    double score = 0; ///< macro-F1 on the held-out split
    std::string error; ///< set when training failed; score is then 0
};

struct SearchResult {
    ModelConfig best;
    std::vector<LeaderboardEntry> leaderboard; ///< score descending, then config id
};

/// The full candidate grid: BR, PS (p in {0,1,2}) and EPS (p, m in {5,10}, t in {0.4,0.5,0.6}),
/// each with logistic regression and a decision tree.
std::vector<ModelConfig> search_grid(std::uint64_t seed);

/// Evaluates `budget` grid configs (all of them, or a seeded sample) on a 70:30 split.
SearchResult model_search(const TrainingMatrix& t, int budget, std::uint64_t seed);

nlohmann::ordered_json to_json(const SearchResult& r);

} // namespace srmforge::ml
