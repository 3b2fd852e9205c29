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

#include <string>
#include <vector>

#include "srmforge/labels.hpp"
#include "srmforge/ml/transform.hpp"
#include "srmforge/random.hpp"

namespace srmforge::testing {

/// A schema of `d` numeric cells named x0..x{d-1}.
inline features::FeatureSchema numeric_schema(std::size_t d) {
    features::FeatureSchema s;
    s.version = "synthetic-" + std::to_string(d);
    for (std::size_t i = 0; i < d; ++i) s.entries.push_back({"x" + std::to_string(i), features::FeatureKind::numeric, {}, false});
    return s;
}

inline constexpr Label kA = Label::source;
inline constexpr Label kB = Label::sink;
inline constexpr Label kC = Label::cwe89;

/// z picks one of three label sets: {A,B} below 1, {} in the middle, {A,B,C} from 2 on.
/// B is present exactly when A is. By default z = x0 ~ U[0,3) and x1..x3 are noise; with `oblique`
/// z = x0 + x1 with both halves ~ U[0,1.5), so no single feature decides the set.
inline ml::TrainingMatrix correlated_labels(std::size_t n, Rng& rng, bool oblique = false) {
    ml::TrainingMatrix t;
    t.schema = numeric_schema(4);
    for (std::size_t i = 0; i < n; ++i) {
        features::FeatureVector v{t.schema.version, {}};
        double x0 = (oblique ? 1.5 : 3.0) * uniform_unit(rng);
        double x1 = (oblique ? 1.5 : 1.0) * uniform_unit(rng);
        v.values.push_back(x0);
        v.values.push_back(x1);
        for (int k = 0; k < 2; ++k) v.values.push_back(uniform_unit(rng));
        const double z = oblique ? x0 + x1 : x0;
        LabelSet s;
        if (z < 1) s = {kA, kB};
        else if (z >= 2) s = {kA, kB, kC};
        t.rows.push_back(std::move(v));
        t.labels.push_back(s);
    }
    return t;
}

/// Three labels, each decided by its own feature crossing 0.5. x3 is noise.
inline ml::TrainingMatrix independent_labels(std::size_t n, Rng& rng) {
    ml::TrainingMatrix t;
    t.schema = numeric_schema(4);
    const Label labels[] = {kA, kB, kC};
    for (std::size_t i = 0; i < n; ++i) {
        features::FeatureVector v{t.schema.version, {}};
        LabelSet s;
        for (int k = 0; k < 3; ++k) {
            double x = uniform_unit(rng);
            v.values.push_back(x);
            if (x > 0.5) s.set(labels[k]);
        }
        v.values.push_back(uniform_unit(rng));
        t.rows.push_back(std::move(v));
        t.labels.push_back(s);
    }
    return t;
}

} // namespace srmforge::testing
