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

#include "srmforge/ml/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "srmforge/error.hpp"
#include "srmforge/random.hpp"

namespace srmforge::ml {

double f1_score(double precision, double recall) {
    return precision + recall == 0 ? 0.0 : 2 * precision * recall / (precision + recall);
}

std::vector<std::pair<std::string, double>> Metrics::fields() const {
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t i = 0; i < kLabelCount; ++i) {
        const std::string id(kLabelIds[i]);
        const auto& l = per_label[i];
        out.emplace_back(id + ".precision", l.precision);
        out.emplace_back(id + ".recall", l.recall);
        out.emplace_back(id + ".f1", l.f1);
        out.emplace_back(id + ".accuracy", l.accuracy);
        out.emplace_back(id + ".support", static_cast<double>(l.support));
    }
    out.emplace_back("macro_precision", macro_precision);
    out.emplace_back("macro_recall", macro_recall);
    out.emplace_back("macro_f1", macro_f1);
    out.emplace_back("micro_f1", micro_f1);
    out.emplace_back("subset_accuracy", subset_accuracy);
    out.emplace_back("hamming_loss", hamming_loss);
    return out;
}

Metrics Metrics::from_fields(const std::vector<double>& v) {
    if (v.size() != kLabelCount * 5 + 6) throw LengthMismatch("wrong number of metric fields");
    Metrics m;
    std::size_t k = 0;
    for (auto& l : m.per_label) {
        l.precision = v[k++];
        l.recall = v[k++];
        l.f1 = v[k++];
        l.accuracy = v[k++];
        l.support = static_cast<std::size_t>(std::llround(v[k++]));
    }
    m.macro_precision = v[k++];
    m.macro_recall = v[k++];
    m.macro_f1 = v[k++];
    m.micro_f1 = v[k++];
    m.subset_accuracy = v[k++];
    m.hamming_loss = v[k++];
    return m;
}

Metrics evaluate_metrics(const std::vector<LabelSet>& pred, const std::vector<LabelSet>& gold) {
    if (pred.size() != gold.size())
        throw LengthMismatch(std::to_string(pred.size()) + " predictions but " + std::to_string(gold.size()) +
                             " gold label sets");
    if (pred.empty()) throw LengthMismatch("nothing to evaluate");
    const double n = static_cast<double>(pred.size());

    Metrics m;
    std::size_t tp_all = 0, fp_all = 0, fn_all = 0, wrong_bits = 0, exact = 0;
    std::size_t macro_labels = 0;
    bool any_predicted = false;
    for (std::size_t i = 0; i < kLabelCount; ++i) {
        std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
        for (std::size_t r = 0; r < pred.size(); ++r) {
            bool p = pred[r].test(i), g = gold[r].test(i);
            if (p && g) ++tp;
            else if (p) ++fp;
            else if (g) ++fn;
            else ++tn;
        }
        auto& l = m.per_label[i];
        l.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
        l.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
        l.f1 = f1_score(l.precision, l.recall);
        l.accuracy = static_cast<double>(tp + tn) / n;
        l.support = tp + fn;
        tp_all += tp;
        fp_all += fp;
        fn_all += fn;
        wrong_bits += fp + fn;
        any_predicted = any_predicted || tp + fp > 0;
        if (l.support > 0) {
            ++macro_labels;
            m.macro_precision += l.precision;
            m.macro_recall += l.recall;
            m.macro_f1 += l.f1;
        }
    }
    if (macro_labels > 0) {
        m.macro_precision /= static_cast<double>(macro_labels);
        m.macro_recall /= static_cast<double>(macro_labels);
        m.macro_f1 /= static_cast<double>(macro_labels);
    } else {
        // no gold positives anywhere: perfect only if nothing was predicted either
        double v = any_predicted ? 0.0 : 1.0;
        m.macro_precision = m.macro_recall = m.macro_f1 = v;
    }
    if (tp_all + fp_all + fn_all == 0) {
        m.micro_f1 = 1.0;
    } else {
        double p = tp_all + fp_all == 0 ? 0.0 : static_cast<double>(tp_all) / static_cast<double>(tp_all + fp_all);
        double r = tp_all + fn_all == 0 ? 0.0 : static_cast<double>(tp_all) / static_cast<double>(tp_all + fn_all);
        m.micro_f1 = f1_score(p, r);
    }
    for (std::size_t r = 0; r < pred.size(); ++r) exact += pred[r] == gold[r] ? 1 : 0;
    m.subset_accuracy = static_cast<double>(exact) / n;
    m.hamming_loss = static_cast<double>(wrong_bits) / (n * static_cast<double>(kLabelCount));
    return m;
}

nlohmann::ordered_json to_json(const Metrics& m) {
    nlohmann::ordered_json j;
    auto per = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < kLabelCount; ++i) {
        const auto& l = m.per_label[i];
        per[std::string(kLabelIds[i])] = {{"precision", l.precision}, {"recall", l.recall}, {"f1", l.f1},
                                          {"accuracy", l.accuracy}, {"support", l.support}};
    }
    j["perLabel"] = per;
    j["macroPrecision"] = m.macro_precision;
    j["macroRecall"] = m.macro_recall;
    j["macroF1"] = m.macro_f1;
    j["microF1"] = m.micro_f1;
    j["subsetAccuracy"] = m.subset_accuracy;
    j["hammingLoss"] = m.hamming_loss;
    return j;
}

std::string_view to_string(Protocol p) { return p == Protocol::kfold ? "kfold" : "holdout"; }

std::optional<Protocol> parse_protocol(std::string_view s) {
    if (s == "kfold") return Protocol::kfold;
    if (s == "holdout") return Protocol::holdout;
    return std::nullopt;
}

namespace {

std::vector<LabelSet> predict_all(const Predictor& predict, const TrainingMatrix& t) {
    std::vector<LabelSet> out;
    out.reserve(t.size());
    for (const auto& r : t.rows) out.push_back(predict(r));
    return out;
}

std::size_t train_count(std::size_t n, double fraction) {
    auto c = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * fraction - 1e-9));
    return std::clamp<std::size_t>(c, 1, n - 1);
}

} // namespace

CvResult cross_validate(const TrainingMatrix& t, const Trainer& trainer, int k, std::uint64_t seed, Protocol protocol,
                        double train_fraction) {
    t.check();
    const std::size_t n = t.size();
    if (protocol == Protocol::kfold) {
        if (k < 2) throw Error("k-fold cross-validation needs k >= 2");
        if (n < static_cast<std::size_t>(k))
            throw TooFewRows(std::to_string(n) + " rows cannot fill " + std::to_string(k) + " folds");
    } else {
        if (k < 1) throw Error("holdout cross-validation needs k >= 1");
        if (!(train_fraction > 0 && train_fraction < 1)) throw Error("train fraction must be in (0,1)");
        if (n < 2) throw TooFewRows("holdout needs at least 2 rows");
    }

    CvResult res;
    res.protocol = protocol;
    res.k = k;
    Rng rng(seed);
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> splits;
    if (protocol == Protocol::kfold) {
        auto order = permutation(n, rng);
        const std::size_t kk = static_cast<std::size_t>(k);
        std::size_t start = 0;
        for (std::size_t f = 0; f < kk; ++f) {
            std::size_t len = n / kk + (f < n % kk ? 1 : 0);
            std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(start),
                                          order.begin() + static_cast<std::ptrdiff_t>(start + len));
            std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(start));
            train.insert(train.end(), order.begin() + static_cast<std::ptrdiff_t>(start + len), order.end());
            start += len;
            std::sort(test.begin(), test.end());
            std::sort(train.begin(), train.end());
            splits.emplace_back(std::move(train), std::move(test));
        }
    } else {
        const std::size_t c = train_count(n, train_fraction);
        for (int f = 0; f < k; ++f) {
            auto order = permutation(n, rng);
            std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(c));
            std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(c), order.end());
            std::sort(test.begin(), test.end());
            std::sort(train.begin(), train.end());
            splits.emplace_back(std::move(train), std::move(test));
        }
    }

    for (const auto& [train, test] : splits) {
        auto test_set = t.subset(test);
        auto predict = trainer(t.subset(train));
        res.folds.push_back(evaluate_metrics(predict_all(predict, test_set), test_set.labels));
        res.test_indices.push_back(test);
    }

    const std::size_t nf = res.folds.size();
    const std::size_t width = res.folds.front().fields().size();
    std::vector<double> mean(width, 0.0), sd(width, 0.0);
    for (const auto& f : res.folds) {
        auto v = f.fields();
        for (std::size_t i = 0; i < width; ++i) mean[i] += v[i].second / static_cast<double>(nf);
    }
    if (nf > 1) {
        for (const auto& f : res.folds) {
            auto v = f.fields();
            for (std::size_t i = 0; i < width; ++i) sd[i] += (v[i].second - mean[i]) * (v[i].second - mean[i]);
        }
        for (auto& s : sd) s = std::sqrt(s / static_cast<double>(nf - 1));
    }
    res.mean = Metrics::from_fields(mean);
    res.stdev = Metrics::from_fields(sd);
    return res;
}

CvResult cross_validate(const TrainingMatrix& t, const ModelConfig& config, int k, std::uint64_t seed,
                        Protocol protocol, double train_fraction) {
    config.validate();
    Trainer trainer = [config](const TrainingMatrix& train) -> Predictor {
        auto model = std::make_shared<MultiLabelModel>(train_model(train, config));
        return [model](const features::FeatureVector& x) { return predict_labels(*model, x).labels; };
    };
    return cross_validate(t, trainer, k, seed, protocol, train_fraction);
}

nlohmann::ordered_json to_json(const CvResult& r) {
    nlohmann::ordered_json j;
    j["protocol"] = std::string(to_string(r.protocol));
    j["k"] = r.k;
    j["mean"] = to_json(r.mean);
    j["stdev"] = to_json(r.stdev);
    auto folds = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.folds.size(); ++i) {
        nlohmann::ordered_json f;
        f["testRows"] = r.test_indices[i];
        f["metrics"] = to_json(r.folds[i]);
        folds.push_back(f);
    }
    j["folds"] = folds;
    return j;
}

std::vector<ModelConfig> search_grid(std::uint64_t seed) {
    const std::vector<BaseLearner> bases = {BaseLearner::logistic_regression(), BaseLearner::decision_tree()};
    std::vector<ModelConfig> grid;
    for (const auto& b : bases) {
        ModelConfig c;
        c.kind = ModelKind::binary_relevance;
        c.base = b;
        c.seed = seed;
        grid.push_back(c);
    }
    for (const auto& b : bases)
        for (int p : {0, 1, 2}) {
            ModelConfig c;
            c.kind = ModelKind::pruned_sets;
            c.base = b;
            c.p = p;
            c.seed = seed;
            grid.push_back(c);
        }
    for (const auto& b : bases)
        for (int p : {0, 1, 2})
            for (int m : {5, 10})
                for (double t : {0.4, 0.5, 0.6}) {
                    ModelConfig c;
                    c.kind = ModelKind::ensemble_pruned_sets;
                    c.base = b;
                    c.p = p;
                    c.m = m;
                    c.t = t;
                    c.seed = seed;
                    grid.push_back(c);
                }
    return grid;
}

SearchResult model_search(const TrainingMatrix& t, int budget, std::uint64_t seed) {
    if (budget < 1) throw Error("search budget must be >= 1");
    t.check();
    if (t.size() < 2) throw TooFewRows("model search needs at least 2 rows");
    auto grid = search_grid(seed);
    Rng rng(seed);
    if (static_cast<std::size_t>(budget) < grid.size()) {
        shuffle_in_place(grid, rng);
        grid.resize(static_cast<std::size_t>(budget));
    }
    auto order = permutation(t.size(), rng);
    const std::size_t c = train_count(t.size(), 0.7);
    std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(c));
    std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(c), order.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    auto train_set = t.subset(train);
    auto test_set = t.subset(test);

    SearchResult res;
    for (const auto& config : grid) {
        LeaderboardEntry e;
        e.config = config;
        try {
            auto model = train_model(train_set, config);
            std::vector<LabelSet> pred;
            for (const auto& r : test_set.rows) pred.push_back(predict_labels(model, r).labels);
            e.score = evaluate_metrics(pred, test_set.labels).macro_f1;
        } catch (const Error& ex) {
            e.error = ex.what();
        }
        res.leaderboard.push_back(std::move(e));
    }
    std::stable_sort(res.leaderboard.begin(), res.leaderboard.end(), [](const auto& a, const auto& b) {
        if (a.error.empty() != b.error.empty()) return a.error.empty();
        if (a.score != b.score) return a.score > b.score;
        return a.config.id() < b.config.id();
    });
    res.best = res.leaderboard.front().config;
    return res;
}

nlohmann::ordered_json to_json(const SearchResult& r) {
    nlohmann::ordered_json j;
    j["best"] = to_json(r.best);
    j["bestId"] = r.best.id();
    auto board = nlohmann::ordered_json::array();
    for (const auto& e : r.leaderboard) {
        nlohmann::ordered_json row;
        row["id"] = e.config.id();
        row["score"] = e.score;
        if (!e.error.empty()) row["error"] = e.error;
        row["config"] = to_json(e.config);
        board.push_back(row);
    }
    j["leaderboard"] = board;
    return j;
}

} // namespace srmforge::ml
