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

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "srmforge/ml/transform.hpp"

namespace srmforge::ml {

struct LogisticParams {
    double learning_rate = 0.5;
    double l2 = 1e-3;
    int epochs = 300;
    friend bool operator==(const LogisticParams&, const LogisticParams&) = default;
};

struct TreeParams {
    int max_depth = 6;
    int min_leaf = 2;
    friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

/// Base learner choice with its hyperparameters.
struct BaseLearner {
    enum class Kind { logistic_regression, decision_tree };
    Kind kind = Kind::logistic_regression;
    LogisticParams logistic;
    TreeParams tree;

    static BaseLearner logistic_regression(LogisticParams p = {}) { return {Kind::logistic_regression, p, {}}; }
    static BaseLearner decision_tree(TreeParams p = {}) { return {Kind::decision_tree, {}, p}; }
    /// Throws Error on non-positive hyperparameters.
    void validate() const;
    std::string name() const;
    friend bool operator==(const BaseLearner&, const BaseLearner&) = default;
};

struct LogisticModel {
    Dense weights;
    double bias = 0;
    std::vector<double> loss_history; ///< training loss before each epoch and after the last; not serialized
};

struct TreeNode {
    int feature = -1; ///< -1 marks a leaf
    double threshold = 0;
    int left = -1;  ///< x[feature] <= threshold
    int right = -1;
    double value = 0; ///< positive fraction at the node
    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct TreeModel {
    std::vector<TreeNode> nodes; ///< nodes[0] is the root
};

/// Returned when the target has a single class: predicts the observed positive rate.
struct ConstantModel {
    double p = 0;
};

using BinaryModel = std::variant<LogisticModel, TreeModel, ConstantModel>;

/// Mean logistic loss plus (l2/2)|w|^2; the bias is not regularised.
double logistic_loss(const Dense& w, double b, const std::vector<Dense>& x, const std::vector<double>& y, double l2);
/// Analytic gradient of logistic_loss; the last element is the bias derivative.
Dense logistic_gradient(const Dense& w, double b, const std::vector<Dense>& x, const std::vector<double>& y, double l2);

/// Full-batch gradient descent. Step size is capped by the loss curvature bound so the loss never increases.
LogisticModel train_logistic(const std::vector<Dense>& x, const std::vector<double>& y, const LogisticParams& p);
TreeModel train_tree(const std::vector<Dense>& x, const std::vector<double>& y, const TreeParams& p);

/// Dispatches on the learner; a target without both classes yields a ConstantModel. Throws Error on empty input.
BinaryModel train_binary(const std::vector<Dense>& x, const std::vector<double>& y, const BaseLearner& base);

/// Probability of the positive class.
double predict_probability(const BinaryModel& m, const Dense& x);

nlohmann::ordered_json to_json(const BinaryModel& m);
BinaryModel binary_model_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const BaseLearner& b);
BaseLearner base_learner_from_json(const nlohmann::json& j);

double sigmoid(double z);

} // namespace srmforge::ml
