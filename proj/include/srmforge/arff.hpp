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
#include <string_view>
#include <utility>
#include <vector>

#include "srmforge/features.hpp"
#include "srmforge/labels.hpp"

namespace srmforge::arff {

struct Attribute {
    std::string name;
    bool numeric = false;
    std::vector<std::string> values; ///< nominal values

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

/// Generic ARFF content: header plus rows of raw cell strings.
struct Document {
    std::string relation;
    std::vector<Attribute> attributes;
    std::vector<std::vector<std::string>> rows;
};

using LabeledRow = std::pair<features::FeatureVector, LabelSet>;

/// Reads dense ARFF. Throws FormatError with a `line N` path on malformed input.
Document parse(std::string_view text);

/// Label count from a `-C n` marker in the relation name; 0 when absent.
int label_count_marker(std::string_view relation);

/// Labels first as {0,1} attributes, then one attribute per schema entry.
std::string emit(const std::vector<LabeledRow>& records, const features::FeatureSchema& schema,
                 const std::string& relation = "srm-forge");

/// Inverse of emit(). Throws SchemaMismatch when the header does not match `schema`.
std::vector<LabeledRow> read_labeled(std::string_view text, const features::FeatureSchema& schema);

/// Quotes an ARFF token when it contains separators, quotes or ARFF metacharacters.
std::string quote(std::string_view s);

/// Shortest text that parses back to exactly `x`.
std::string format_number(double x);

} // namespace srmforge::arff
