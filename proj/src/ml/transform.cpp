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

#include "srmforge/ml/transform.hpp"

#include <cmath>

#include "srmforge/error.hpp"

namespace srmforge::ml {

using features::FeatureKind;

TrainingMatrix TrainingMatrix::subset(const std::vector<std::size_t>& indices) const {
    TrainingMatrix out;
    out.schema = schema;
    out.rows.reserve(indices.size());
    out.labels.reserve(indices.size());
    for (auto i : indices) {
        out.rows.push_back(rows.at(i));
        out.labels.push_back(labels.at(i));
    }
    return out;
}

void TrainingMatrix::check() const {
    if (rows.size() != labels.size())
        throw LengthMismatch(std::to_string(rows.size()) + " feature rows but " + std::to_string(labels.size()) + " label sets");
    for (const auto& r : rows) features::check_vector(r, schema);
}

FeatureTransform FeatureTransform::fit(const TrainingMatrix& t) {
    t.check();
    FeatureTransform f;
    f.schema_version_ = t.schema.version;
    const std::size_t d = t.schema.size();
    f.mean_.assign(d, 0.0);
    f.scale_.assign(d, 1.0);
    f.category_counts_.assign(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
        const auto& e = t.schema.entries[j];
        f.kinds_.push_back(e.kind);
        switch (e.kind) {
        case FeatureKind::numeric: {
            f.output_size_ += 1;
            if (t.rows.empty()) break;
            double sum = 0;
            for (const auto& r : t.rows) sum += r.values[j];
            double mean = sum / static_cast<double>(t.rows.size());
            double ss = 0;
            for (const auto& r : t.rows) ss += (r.values[j] - mean) * (r.values[j] - mean);
            double sd = std::sqrt(ss / static_cast<double>(t.rows.size()));
            f.mean_[j] = mean;
            f.scale_[j] = sd > 1e-12 ? sd : 1.0;
            break;
        }
        case FeatureKind::binary: f.output_size_ += 1; break;
        case FeatureKind::categorical:
            f.category_counts_[j] = e.categories.size();
            f.output_size_ += e.categories.size();
            break;
        }
    }
    return f;
}

Dense FeatureTransform::apply(const features::FeatureVector& v) const {
    if (v.schema_version != schema_version_ || v.values.size() != kinds_.size())
        throw SchemaMismatch("feature vector schema '" + v.schema_version + "' does not match model schema '" +
                             schema_version_ + "'");
    Dense out;
    out.reserve(output_size_);
    for (std::size_t j = 0; j < kinds_.size(); ++j) {
        switch (kinds_[j]) {
        case FeatureKind::numeric: out.push_back((v.values[j] - mean_[j]) / scale_[j]); break;
        case FeatureKind::binary: out.push_back(v.values[j]); break;
        case FeatureKind::categorical: {
            auto idx = static_cast<std::size_t>(v.values[j]);
            if (idx >= category_counts_[j]) throw SchemaMismatch("categorical index out of range");
            for (std::size_t c = 0; c < category_counts_[j]; ++c) out.push_back(c == idx ? 1.0 : 0.0);
            break;
        }
        }
    }
    return out;
}

std::vector<Dense> FeatureTransform::apply_all(const std::vector<features::FeatureVector>& rows) const {
    std::vector<Dense> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(apply(r));
    return out;
}

nlohmann::ordered_json FeatureTransform::to_json() const {
    nlohmann::ordered_json j;
    j["schemaVersion"] = schema_version_;
    auto kinds = nlohmann::ordered_json::array();
    for (auto k : kinds_) kinds.push_back(std::string(features::to_string(k)));
    j["kinds"] = kinds;
    j["categoryCounts"] = category_counts_;
    j["mean"] = mean_;
    j["scale"] = scale_;
    return j;
}

FeatureTransform FeatureTransform::from_json(const nlohmann::json& j) {
    FeatureTransform f;
    try {
        f.schema_version_ = j.at("schemaVersion").get<std::string>();
        for (const auto& k : j.at("kinds")) {
            auto s = k.get<std::string>();
            if (s == "numeric") f.kinds_.push_back(FeatureKind::numeric);
            else if (s == "binary") f.kinds_.push_back(FeatureKind::binary);
            else if (s == "categorical") f.kinds_.push_back(FeatureKind::categorical);
            else throw FormatError("/transform/kinds", "unknown kind '" + s + "'");
        }
        f.category_counts_ = j.at("categoryCounts").get<std::vector<std::size_t>>();
        f.mean_ = j.at("mean").get<std::vector<double>>();
        f.scale_ = j.at("scale").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("/transform", e.what());
    }
    std::size_t d = f.kinds_.size();
    if (f.category_counts_.size() != d || f.mean_.size() != d || f.scale_.size() != d)
        throw FormatError("/transform", "inconsistent array lengths");
    for (std::size_t i = 0; i < d; ++i) {
        f.output_size_ += f.kinds_[i] == FeatureKind::categorical ? f.category_counts_[i] : 1;
    }
    return f;
}

} // namespace srmforge::ml
