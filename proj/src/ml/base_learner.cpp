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

#include "srmforge/ml/base_learner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "srmforge/error.hpp"

namespace srmforge::ml {

void BaseLearner::validate() const {
    if (kind == Kind::logistic_regression) {
        if (!(logistic.learning_rate > 0)) throw Error("learning rate must be positive");
        if (logistic.l2 < 0) throw Error("l2 penalty must be non-negative");
        if (logistic.epochs <= 0) throw Error("epochs must be positive");
    } else {
        if (tree.max_depth <= 0) throw Error("max depth must be positive");
        if (tree.min_leaf <= 0) throw Error("min leaf must be positive");
    }
}

std::string BaseLearner::name() const {
    return kind == Kind::logistic_regression ? "logistic" : "tree";
}

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

namespace {

double dot(const Dense& w, const Dense& x) {
    double s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * x[i];
    return s;
}

// log(1 + exp(z)) without overflow
double softplus(double z) {
    return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

void check_shapes(const std::vector<Dense>& x, const std::vector<double>& y) {
    if (x.empty()) throw Error("no training rows");
    if (x.size() != y.size()) throw LengthMismatch("feature and target lengths differ");
    for (const auto& r : x)
        if (r.size() != x.front().size()) throw LengthMismatch("ragged feature rows");
}

} // namespace

double logistic_loss(const Dense& w, double b, const std::vector<Dense>& x, const std::vector<double>& y, double l2) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double z = dot(w, x[i]) + b;
        s += softplus(z) - y[i] * z;
    }
    double reg = 0;
    for (double v : w) reg += v * v;
    return (x.empty() ? 0.0 : s / static_cast<double>(x.size())) + 0.5 * l2 * reg;
}

Dense logistic_gradient(const Dense& w, double b, const std::vector<Dense>& x, const std::vector<double>& y, double l2) {
    Dense g(w.size() + 1, 0.0);
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = sigmoid(dot(w, x[i]) + b) - y[i];
        for (std::size_t k = 0; k < w.size(); ++k) g[k] += r * x[i][k] / n;
        g[w.size()] += r / n;
    }
    for (std::size_t k = 0; k < w.size(); ++k) g[k] += l2 * w[k];
    return g;
}

LogisticModel train_logistic(const std::vector<Dense>& x, const std::vector<double>& y, const LogisticParams& p) {
    check_shapes(x, y);
    const std::size_t d = x.front().size();
    double max_norm = 0;
    for (const auto& r : x) max_norm = std::max(max_norm, dot(r, r) + 1.0);
    const double lipschitz = 0.25 * max_norm + p.l2;
    const double step = std::min(p.learning_rate, 1.0 / lipschitz);

    LogisticModel m;
    m.weights.assign(d, 0.0);
    for (int e = 0; e < p.epochs; ++e) {
        m.loss_history.push_back(logistic_loss(m.weights, m.bias, x, y, p.l2));
        Dense g = logistic_gradient(m.weights, m.bias, x, y, p.l2);
        for (std::size_t k = 0; k < d; ++k) m.weights[k] -= step * g[k];
        m.bias -= step * g[d];
    }
    m.loss_history.push_back(logistic_loss(m.weights, m.bias, x, y, p.l2));
    return m;
}

namespace {

struct TreeBuilder {
    const std::vector<Dense>& x;
    const std::vector<double>& y;
    TreeParams p;
    TreeModel model;

    static double gini(double pos, double n) {
        if (n <= 0) return 0;
        double q = pos / n;
        return 2 * q * (1 - q);
    }

    int build(std::vector<std::size_t> idx, int depth) {
        double pos = 0;
        for (auto i : idx) pos += y[i];
        const double n = static_cast<double>(idx.size());
        int id = static_cast<int>(model.nodes.size());
        model.nodes.push_back({-1, 0, -1, -1, pos / n});
        if (depth >= p.max_depth || pos == 0 || pos == n || idx.size() < 2 * static_cast<std::size_t>(p.min_leaf))
            return id;

        const double parent = gini(pos, n);
        double best_gain = 1e-12;
        int best_feature = -1;
        double best_threshold = 0;
        const std::size_t d = x.front().size();
        std::vector<std::size_t> order = idx;
        for (std::size_t f = 0; f < d; ++f) {
            std::sort(order.begin(), order.end(), [&](auto a, auto b) {
                return x[a][f] < x[b][f] || (x[a][f] == x[b][f] && a < b);
            });
            double left_pos = 0;
            for (std::size_t k = 0; k + 1 < order.size(); ++k) {
                left_pos += y[order[k]];
                double cur = x[order[k]][f], next = x[order[k + 1]][f];
                if (cur == next) continue;
                std::size_t nl = k + 1, nr = order.size() - nl;
                if (nl < static_cast<std::size_t>(p.min_leaf) || nr < static_cast<std::size_t>(p.min_leaf)) continue;
                double impurity = (static_cast<double>(nl) * gini(left_pos, static_cast<double>(nl)) +
                                   static_cast<double>(nr) * gini(pos - left_pos, static_cast<double>(nr))) / n;
                double gain = parent - impurity;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = static_cast<int>(f);
                    best_threshold = cur + (next - cur) / 2;
                }
            }
        }
        if (best_feature < 0) return id;

        std::vector<std::size_t> l, r;
        for (auto i : idx) (x[i][static_cast<std::size_t>(best_feature)] <= best_threshold ? l : r).push_back(i);
        model.nodes[static_cast<std::size_t>(id)].feature = best_feature;
        model.nodes[static_cast<std::size_t>(id)].threshold = best_threshold;
        int left = build(std::move(l), depth + 1);
        int right = build(std::move(r), depth + 1);
        model.nodes[static_cast<std::size_t>(id)].left = left;
        model.nodes[static_cast<std::size_t>(id)].right = right;
        return id;
    }
};

} // namespace

TreeModel train_tree(const std::vector<Dense>& x, const std::vector<double>& y, const TreeParams& p) {
    check_shapes(x, y);
    TreeBuilder b{x, y, p, {}};
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    b.build(std::move(idx), 0);
    return std::move(b.model);
}

BinaryModel train_binary(const std::vector<Dense>& x, const std::vector<double>& y, const BaseLearner& base) {
    check_shapes(x, y);
    base.validate();
    double pos = std::accumulate(y.begin(), y.end(), 0.0);
    if (pos == 0 || pos == static_cast<double>(y.size())) return ConstantModel{pos / static_cast<double>(y.size())};
    if (base.kind == BaseLearner::Kind::logistic_regression) return train_logistic(x, y, base.logistic);
    return train_tree(x, y, base.tree);
}

double predict_probability(const BinaryModel& m, const Dense& x) {
    if (const auto* lr = std::get_if<LogisticModel>(&m)) {
        if (x.size() != lr->weights.size()) throw LengthMismatch("input width differs from model width");
        return sigmoid(dot(lr->weights, x) + lr->bias);
    }
    if (const auto* t = std::get_if<TreeModel>(&m)) {
        std::size_t at = 0;
        while (t->nodes.at(at).feature >= 0) {
            const auto& node = t->nodes[at];
            at = static_cast<std::size_t>(x.at(static_cast<std::size_t>(node.feature)) <= node.threshold ? node.left
                                                                                                       : node.right);
        }
        return t->nodes[at].value;
    }
    return std::get<ConstantModel>(m).p;
}

nlohmann::ordered_json to_json(const BinaryModel& m) {
    nlohmann::ordered_json j;
    if (const auto* lr = std::get_if<LogisticModel>(&m)) {
        j["type"] = "logistic";
        j["weights"] = lr->weights;
        j["bias"] = lr->bias;
    } else if (const auto* t = std::get_if<TreeModel>(&m)) {
        j["type"] = "tree";
        auto nodes = nlohmann::ordered_json::array();
        for (const auto& n : t->nodes)
            nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
        j["nodes"] = nodes;
    } else {
        j["type"] = "constant";
        j["p"] = std::get<ConstantModel>(m).p;
    }
    return j;
}

BinaryModel binary_model_from_json(const nlohmann::json& j) {
    try {
        auto type = j.at("type").get<std::string>();
        if (type == "logistic") {
            LogisticModel m;
            m.weights = j.at("weights").get<Dense>();
            m.bias = j.at("bias").get<double>();
            return m;
        }
        if (type == "tree") {
            TreeModel t;
            for (const auto& n : j.at("nodes"))
                t.nodes.push_back({n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(), n.at(3).get<int>(),
                                   n.at(4).get<double>()});
            const int size = static_cast<int>(t.nodes.size());
            if (size == 0) throw FormatError("/model", "empty tree");
            for (const auto& n : t.nodes)
                if (n.feature >= 0 && (n.left <= 0 || n.left >= size || n.right <= 0 || n.right >= size))
                    throw FormatError("/model", "tree child index out of range");
            return t;
        }
        if (type == "constant") return ConstantModel{j.at("p").get<double>()};
        throw FormatError("/model", "unknown binary model type '" + type + "'");
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("/model", e.what());
    }
}

nlohmann::ordered_json to_json(const BaseLearner& b) {
    nlohmann::ordered_json j;
    j["name"] = b.name();
    if (b.kind == BaseLearner::Kind::logistic_regression) {
        j["learningRate"] = b.logistic.learning_rate;
        j["l2"] = b.logistic.l2;
        j["epochs"] = b.logistic.epochs;
    } else {
        j["maxDepth"] = b.tree.max_depth;
        j["minLeaf"] = b.tree.min_leaf;
    }
    return j;
}

BaseLearner base_learner_from_json(const nlohmann::json& j) {
    try {
        auto name = j.at("name").get<std::string>();
        BaseLearner b;
        if (name == "logistic") {
            b = BaseLearner::logistic_regression(
                {j.value("learningRate", 0.5), j.value("l2", 1e-3), j.value("epochs", 300)});
        } else if (name == "tree") {
            b = BaseLearner::decision_tree({j.value("maxDepth", 6), j.value("minLeaf", 2)});
        } else {
            throw FormatError("/base", "unknown base learner '" + name + "'");
        }
        b.validate();
        return b;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("/base", e.what());
    }
}

} // namespace srmforge::ml
