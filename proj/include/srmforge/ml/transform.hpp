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
#include <vector>

#include "json.hpp"
#include "srmforge/features.hpp"
#include "srmforge/labels.hpp"

namespace srmforge::ml {

/// Labeled feature rows sharing one schema.
struct TrainingMatrix {
    features::FeatureSchema schema;
    std::vector<features::FeatureVector> rows;
    std::vector<LabelSet> labels;

    std::size_t size() const noexcept { return rows.size(); }
    TrainingMatrix subset(const std::vector<std::size_t>& indices) const;
    /// Throws SchemaMismatch or LengthMismatch.
    void check() const;
};

using Dense = std::vector<double>;

/// z-scores numeric cells with training statistics, one-hot encodes categoricals and passes binaries through.
class FeatureTransform {
public:
    FeatureTransform() = default;
    static FeatureTransform fit(const TrainingMatrix& t);

    Dense apply(const features::FeatureVector& v) const;
    std::vector<Dense> apply_all(const std::vector<features::FeatureVector>& rows) const;
    std::size_t output_size() const noexcept { return output_size_; }
    const std::string& schema_version() const noexcept { return schema_version_; }

    nlohmann::ordered_json to_json() const;
    static FeatureTransform from_json(const nlohmann::json& j);

    friend bool operator==(const FeatureTransform&, const FeatureTransform&) = default;

private:
    std::string schema_version_;
    std::vector<features::FeatureKind> kinds_;
    std::vector<std::size_t> category_counts_; ///< per input cell; 0 unless categorical
    std::vector<double> mean_;
    std::vector<double> scale_;
    std::size_t output_size_ = 0;
};

} // namespace srmforge::ml
