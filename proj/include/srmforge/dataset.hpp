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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "srmforge/labels.hpp"

namespace srmforge::dataset {

enum class Discovery { training, detected, manual };

std::string_view to_string(Discovery d);
std::optional<Discovery> parse_discovery(std::string_view s);

/// Where taint leaves a method: its return value, one parameter, or nowhere.
struct DataOut {
    enum class Kind { none, return_value, parameter };
    Kind kind = Kind::none;
    int parameter = 0;

    static DataOut none() { return {}; }
    static DataOut return_value() { return {Kind::return_value, 0}; }
    static DataOut param(int i) { return {Kind::parameter, i}; }

    friend bool operator==(const DataOut&, const DataOut&) = default;
};

struct MethodRecord {
    std::string signature;
    LabelSet labels;
    std::vector<int> data_in;
    DataOut data_out;
    Discovery discovery = Discovery::training;
    std::optional<std::string> note;
    std::optional<std::array<double, kLabelCount>> scores; ///< per-label model scores on detected records

    friend bool operator==(const MethodRecord&, const MethodRecord&) = default;
};

/// Records are kept sorted by signature, which is also the canonical file order.
struct Dataset {
    std::string version = "1";
    std::vector<MethodRecord> records;

    const MethodRecord* find(std::string_view signature) const;
    friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Checks one record in isolation. Throws FormatError with `path` as location prefix.
void validate_record(const MethodRecord& r, const std::string& path = "");

/// Non-fatal findings such as CWE labels without a role label.
std::vector<std::string> warnings(const Dataset& d);

/// Parses and validates a dataset document; the first invalid record aborts the whole load.
Dataset load_dataset(std::string_view document);
Dataset load_dataset_file(const std::string& path);

nlohmann::ordered_json to_json(const MethodRecord& r);
MethodRecord record_from_json(const nlohmann::json& j, const std::string& path);

/// Canonical text: records sorted by signature, fixed field order, two-space indent, trailing newline.
std::string save_dataset(const Dataset& d);

/// User edits: a matching signature is replaced, new ones are appended; both become `manual`.
/// Later edits to the same signature win.
Dataset merge_records(const Dataset& base, const std::vector<MethodRecord>& edits);

/// Model output: appended as `detected`, or refreshed when the existing record is itself `detected`.
/// Manual and training records are never touched.
Dataset merge_detected(const Dataset& base, const std::vector<MethodRecord>& detected);

/// Label-blind seeded shuffle; the first part holds ceil(n * train_fraction) records.
std::pair<Dataset, Dataset> split_dataset(const Dataset& d, double train_fraction, std::uint64_t seed);

struct DatasetStats {
    std::size_t records = 0;
    std::array<std::size_t, kLabelCount> label_counts{};
    std::map<std::string, std::size_t> label_set_histogram; ///< keyed by to_string(LabelSet)
    std::array<std::array<std::size_t, kLabelCount>, kLabelCount> cooccurrence{};
    double cwe_without_role_fraction = 0;
    std::map<std::string, std::size_t> discovery_counts;
};

DatasetStats dataset_stats(const Dataset& d);
nlohmann::ordered_json to_json(const DatasetStats& s);

} // namespace srmforge::dataset
