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

#include "srmforge/ml/multilabel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "srmforge/arff.hpp"
#include "srmforge/error.hpp"
#include "srmforge/random.hpp"

namespace srmforge::ml {

namespace {

constexpr std::string_view kModelFormat = "srm-forge-model";
constexpr int kModelVersion = 1;

std::vector<double> label_column(const std::vector<LabelSet>& labels, std::size_t i) {
    std::vector<double> y;
    y.reserve(labels.size());
    for (const auto& s : labels) y.push_back(s.test(i) ? 1.0 : 0.0);
    return y;
}

} // namespace

std::string_view to_string(ModelKind k) {
    switch (k) {
    case ModelKind::binary_relevance: return "binary_relevance";
    case ModelKind::pruned_sets: return "pruned_sets";
    case ModelKind::ensemble_pruned_sets: return "ensemble_pruned_sets";
    }
    return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view s) {
    if (s == "binary_relevance" || s == "br") return ModelKind::binary_relevance;
    if (s == "pruned_sets" || s == "ps") return ModelKind::pruned_sets;
    if (s == "ensemble_pruned_sets" || s == "eps") return ModelKind::ensemble_pruned_sets;
    return std::nullopt;
}

std::string ModelConfig::id() const {
    switch (kind) {
    case ModelKind::binary_relevance: return "br/" + base.name();
    case ModelKind::pruned_sets: return "ps/" + base.name() + "/p" + std::to_string(p);
    case ModelKind::ensemble_pruned_sets:
        return "eps/" + base.name() + "/p" + std::to_string(p) + "/m" + std::to_string(m) + "/t" +
               arff::format_number(t);
    }
    return "?";
}

void ModelConfig::validate() const {
    base.validate();
    if (p < 0) throw Error("pruning threshold p must be >= 0");
    if (m < 1) throw Error("ensemble size m must be >= 1");
    if (!(sample_fraction > 0 && sample_fraction <= 1)) throw Error("sample fraction must be in (0,1]");
    if (!(t >= 0 && t <= 1)) throw Error("vote threshold t must be in [0,1]");
}

nlohmann::ordered_json to_json(const ModelConfig& c) {
    nlohmann::ordered_json j;
    j["kind"] = std::string(to_string(c.kind));
    j["base"] = to_json(c.base);
    j["p"] = c.p;
    j["m"] = c.m;
    j["sampleFraction"] = c.sample_fraction;
    j["t"] = c.t;
    j["seed"] = c.seed;
    return j;
}

ModelConfig model_config_from_json(const nlohmann::json& j) {
    ModelConfig c;
    try {
        if (j.contains("kind")) {
            auto k = parse_model_kind(j.at("kind").get<std::string>());
            if (!k) throw FormatError("/config/kind", "unknown model kind");
            c.kind = *k;
        }
        if (j.contains("base")) c.base = base_learner_from_json(j.at("base"));
        c.p = j.value("p", c.p);
        c.m = j.value("m", c.m);
        c.sample_fraction = j.value("sampleFraction", c.sample_fraction);
        c.t = j.value("t", c.t);
        c.seed = j.value("seed", c.seed);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("/config", e.what());
    }
    try {
        c.validate();
    } catch (const FormatError&) {
        throw;
    } catch (const Error& e) {
        throw FormatError("/config", e.what());
    }
    return c;
}

PruneResult prune_label_sets(const std::vector<LabelSet>& rows, int p) {
    if (rows.empty()) throw Error("cannot prune an empty list of label sets");
    std::map<LabelSet, int> counts;
    for (const auto& s : rows) ++counts[s];
    PruneResult r;
    for (const auto& [s, n] : counts)
        if (n > p) r.frequent.push_back(s);
    for (const auto& [s, n] : counts) {
        if (n > p) continue;
        std::vector<LabelSet> candidates;
        for (const auto& f : r.frequent)
            if (f != s && f.subset_of(s)) candidates.push_back(f);
        std::vector<LabelSet> maximal;
        for (const auto& c : candidates) {
            bool dominated = std::any_of(candidates.begin(), candidates.end(),
                                         [&](const LabelSet& o) { return o != c && c.subset_of(o); });
            if (!dominated) maximal.push_back(c);
        }
        r.reassignment[s] = std::move(maximal);
    }
    return r;
}

namespace {

PrunedSetsModel fit_pruned_sets(const std::vector<Dense>& x, const std::vector<LabelSet>& labels,
                                const BaseLearner& base, int p) {
    auto pruned = prune_label_sets(labels, p);
    if (pruned.frequent.empty())
        throw EmptyAfterPruning("no label set occurs more than " + std::to_string(p) + " times");

    std::vector<const Dense*> rows;
    std::vector<LabelSet> classes_of_rows;
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto it = pruned.reassignment.find(labels[i]);
        if (it == pruned.reassignment.end()) {
            rows.push_back(&x[i]);
            classes_of_rows.push_back(labels[i]);
        } else {
            for (const auto& sub : it->second) {
                rows.push_back(&x[i]);
                classes_of_rows.push_back(sub);
            }
        }
    }

    PrunedSetsModel model;
    model.classes = pruned.frequent;
    model.training_rows = rows.size();
    if (model.classes.size() == 1) return model;

    std::vector<Dense> xs;
    xs.reserve(rows.size());
    for (const auto* r : rows) xs.push_back(*r);
    for (const auto& c : model.classes) {
        std::vector<double> y;
        y.reserve(rows.size());
        for (const auto& s : classes_of_rows) y.push_back(s == c ? 1.0 : 0.0);
        model.scorers.push_back(train_binary(xs, y, base));
    }
    return model;
}

} // namespace

LabelSet predict_member(const PrunedSetsModel& member, const Dense& x) {
    if (member.classes.empty()) throw Error("pruned-sets member has no classes");
    if (member.scorers.empty()) return member.classes.front();
    std::size_t best = 0;
    double best_p = -1;
    for (std::size_t c = 0; c < member.scorers.size(); ++c) {
        double p = predict_probability(member.scorers[c], x);
        if (p > best_p) {
            best_p = p;
            best = c;
        }
    }
    return member.classes[best];
}

MultiLabelModel train_binary_relevance(const TrainingMatrix& t, const BaseLearner& base) {
    if (t.size() == 0) throw Error("training matrix is empty");
    base.validate();
    MultiLabelModel model;
    model.kind = ModelKind::binary_relevance;
    model.config.kind = ModelKind::binary_relevance;
    model.config.base = base;
    model.schema_version = t.schema.version;
    model.transform = FeatureTransform::fit(t);
    auto x = model.transform.apply_all(t.rows);
    for (std::size_t i = 0; i < kLabelCount; ++i) model.components.push_back(train_binary(x, label_column(t.labels, i), base));
    return model;
}

MultiLabelModel train_pruned_sets(const TrainingMatrix& t, const BaseLearner& base, int p) {
    if (t.size() == 0) throw Error("training matrix is empty");
    base.validate();
    MultiLabelModel model;
    model.kind = ModelKind::pruned_sets;
    model.config.kind = ModelKind::pruned_sets;
    model.config.base = base;
    model.config.p = p;
    model.schema_version = t.schema.version;
    model.transform = FeatureTransform::fit(t);
    auto x = model.transform.apply_all(t.rows);
    model.members.push_back(fit_pruned_sets(x, t.labels, base, p));
    return model;
}

MultiLabelModel train_ensemble_pruned_sets(const TrainingMatrix& t, const BaseLearner& base, int p, int m,
                                           double sample_fraction, double threshold, std::uint64_t seed) {
    if (t.size() == 0) throw Error("training matrix is empty");
    MultiLabelModel model;
    model.kind = ModelKind::ensemble_pruned_sets;
    model.config = {ModelKind::ensemble_pruned_sets, base, p, m, sample_fraction, threshold, seed};
    model.config.validate();
    model.schema_version = t.schema.version;
    model.transform = FeatureTransform::fit(t);
    auto x = model.transform.apply_all(t.rows);

    const auto n = t.size();
    const auto take = std::min<std::size_t>(
        n, static_cast<std::size_t>(std::ceil(static_cast<double>(n) * sample_fraction - 1e-9)));
    Rng rng(seed);
    for (int k = 0; k < m; ++k) {
        auto order = permutation(n, rng);
        order.resize(std::max<std::size_t>(take, 1));
        std::sort(order.begin(), order.end());
        std::vector<Dense> xs;
        std::vector<LabelSet> ys;
        for (auto i : order) {
            xs.push_back(x[i]);
            ys.push_back(t.labels[i]);
        }
        try {
            model.members.push_back(fit_pruned_sets(xs, ys, base, p));
        } catch (const EmptyAfterPruning& e) {
            model.diagnostics.push_back("member " + std::to_string(k) + " skipped: " + e.what());
        }
    }
    if (model.members.empty())
        throw EmptyAfterPruning("every ensemble member was empty after pruning with p=" + std::to_string(p));
    return model;
}

MultiLabelModel train_model(const TrainingMatrix& t, const ModelConfig& c) {
    c.validate();
    switch (c.kind) {
    case ModelKind::binary_relevance: {
        auto m = train_binary_relevance(t, c.base);
        m.config = c;
        return m;
    }
    case ModelKind::pruned_sets: {
        auto m = train_pruned_sets(t, c.base, c.p);
        m.config = c;
        return m;
    }
    case ModelKind::ensemble_pruned_sets:
        return train_ensemble_pruned_sets(t, c.base, c.p, c.m, c.sample_fraction, c.t, c.seed);
    }
    throw Error("unknown model kind");
}

Prediction predict_labels(const MultiLabelModel& model, const features::FeatureVector& x) {
    if (x.schema_version != model.schema_version)
        throw SchemaMismatch("feature vector schema '" + x.schema_version + "' does not match model schema '" +
                             model.schema_version + "'");
    Dense z = model.transform.apply(x);
    Prediction out;
    switch (model.kind) {
    case ModelKind::binary_relevance:
        for (std::size_t i = 0; i < kLabelCount; ++i) {
            out.scores[i] = predict_probability(model.components.at(i), z);
            out.labels.set(i, out.scores[i] >= 0.5);
        }
        break;
    case ModelKind::pruned_sets: {
        out.labels = predict_member(model.members.at(0), z);
        for (std::size_t i = 0; i < kLabelCount; ++i) out.scores[i] = out.labels.test(i) ? 1.0 : 0.0;
        break;
    }
    case ModelKind::ensemble_pruned_sets: {
        std::array<int, kLabelCount> votes{};
        for (const auto& member : model.members) {
            auto s = predict_member(member, z);
            for (std::size_t i = 0; i < kLabelCount; ++i) votes[i] += s.test(i) ? 1 : 0;
        }
        const double total = static_cast<double>(model.members.size());
        for (std::size_t i = 0; i < kLabelCount; ++i) {
            out.scores[i] = votes[i] / total;
            out.labels.set(i, votes[i] > 0 && out.scores[i] >= model.config.t);
        }
        break;
    }
    }
    return out;
}

nlohmann::ordered_json to_json(const MultiLabelModel& m) {
    nlohmann::ordered_json j;
    j["format"] = std::string(kModelFormat);
    j["version"] = kModelVersion;
    j["kind"] = std::string(to_string(m.kind));
    j["config"] = to_json(m.config);
    j["schemaVersion"] = m.schema_version;
    j["transform"] = m.transform.to_json();
    if (m.kind == ModelKind::binary_relevance) {
        auto comps = nlohmann::ordered_json::array();
        for (const auto& c : m.components) comps.push_back(to_json(c));
        j["components"] = comps;
    } else {
        auto members = nlohmann::ordered_json::array();
        for (const auto& mem : m.members) {
            nlohmann::ordered_json mj;
            auto classes = nlohmann::ordered_json::array();
            for (const auto& c : mem.classes) classes.push_back(c.key());
            mj["classes"] = classes;
            auto scorers = nlohmann::ordered_json::array();
            for (const auto& s : mem.scorers) scorers.push_back(to_json(s));
            mj["scorers"] = scorers;
            mj["trainingRows"] = mem.training_rows;
            members.push_back(mj);
        }
        j["members"] = members;
    }
    j["diagnostics"] = m.diagnostics;
    return j;
}

namespace {

LabelSet label_set_from_key(const std::string& key, const std::string& path) {
    if (key.size() != kLabelCount || key.find_first_not_of("01") != std::string::npos)
        throw FormatError(path, "bad label-set key '" + key + "'");
    LabelSet s;
    for (std::size_t i = 0; i < kLabelCount; ++i) s.set(i, key[i] == '1');
    return s;
}

} // namespace

MultiLabelModel model_from_json(const nlohmann::json& j) {
    MultiLabelModel m;
    try {
        if (j.at("format").get<std::string>() != kModelFormat) throw FormatError("/format", "not a model file");
        if (j.at("version").get<int>() != kModelVersion) throw FormatError("/version", "unsupported model version");
        auto kind = parse_model_kind(j.at("kind").get<std::string>());
        if (!kind) throw FormatError("/kind", "unknown model kind");
        m.kind = *kind;
        m.config = model_config_from_json(j.at("config"));
        m.schema_version = j.at("schemaVersion").get<std::string>();
        m.transform = FeatureTransform::from_json(j.at("transform"));
        if (m.transform.schema_version() != m.schema_version)
            throw FormatError("/transform/schemaVersion", "differs from model schema version");
        if (m.kind == ModelKind::binary_relevance) {
            for (const auto& c : j.at("components")) m.components.push_back(binary_model_from_json(c));
            if (m.components.size() != kLabelCount)
                throw FormatError("/components", "expected " + std::to_string(kLabelCount) + " components");
        } else {
            std::size_t idx = 0;
            for (const auto& mj : j.at("members")) {
                const std::string path = "/members/" + std::to_string(idx++);
                PrunedSetsModel mem;
                std::set<LabelSet> seen;
                for (const auto& c : mj.at("classes")) {
                    auto s = label_set_from_key(c.get<std::string>(), path + "/classes");
                    if (!seen.insert(s).second) throw FormatError(path + "/classes", "duplicate class");
                    mem.classes.push_back(s);
                }
                if (mem.classes.empty()) throw FormatError(path + "/classes", "no classes");
                for (const auto& s : mj.at("scorers")) mem.scorers.push_back(binary_model_from_json(s));
                if (!mem.scorers.empty() && mem.scorers.size() != mem.classes.size())
                    throw FormatError(path + "/scorers", "one scorer per class expected");
                mem.training_rows = mj.value("trainingRows", std::size_t{0});
                m.members.push_back(std::move(mem));
            }
            if (m.members.empty()) throw FormatError("/members", "no members");
            if (m.kind == ModelKind::pruned_sets && m.members.size() != 1)
                throw FormatError("/members", "pruned sets has exactly one member");
        }
        if (j.contains("diagnostics")) m.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("/", e.what());
    }
    return m;
}

std::string save_model(const MultiLabelModel& m) { return to_json(m).dump(2) + "\n"; }

MultiLabelModel load_model(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError("/", e.what());
    }
    return model_from_json(j);
}

} // namespace srmforge::ml
