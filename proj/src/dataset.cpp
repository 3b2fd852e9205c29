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

#include "srmforge/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "srmforge/error.hpp"
#include "srmforge/random.hpp"
#include "srmforge/signature.hpp"

namespace srmforge::dataset {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void sort_records(std::vector<MethodRecord>& records) {
    std::stable_sort(records.begin(), records.end(),
                     [](const MethodRecord& a, const MethodRecord& b) { return a.signature < b.signature; });
}

} // namespace

std::string_view to_string(Discovery d) {
    switch (d) {
    case Discovery::training: return "training";
    case Discovery::detected: return "detected";
    case Discovery::manual: return "manual";
    }
    return "";
}

std::optional<Discovery> parse_discovery(std::string_view s) {
    for (auto d : {Discovery::training, Discovery::detected, Discovery::manual}) {
        if (to_string(d) == s) return d;
    }
    return std::nullopt;
}

const MethodRecord* Dataset::find(std::string_view signature) const {
    auto it = std::find_if(records.begin(), records.end(), [&](const MethodRecord& r) { return r.signature == signature; });
    return it == records.end() ? nullptr : &*it;
}

void validate_record(const MethodRecord& r, const std::string& path) {
    auto sig = parse_signature(r.signature);
    if (!sig) throw FormatError(path + "/signature", "'" + r.signature + "' is not a canonical signature");
    int arity = static_cast<int>(sig->arity());
    std::set<int> seen;
    for (std::size_t i = 0; i < r.data_in.size(); ++i) {
        int idx = r.data_in[i];
        if (idx < 0 || idx >= arity)
            throw FormatError(path + "/dataIn/" + std::to_string(i),
                              "parameter index " + std::to_string(idx) + " out of range for " + std::to_string(arity) +
                                  " parameter(s)");
        if (!seen.insert(idx).second) throw FormatError(path + "/dataIn/" + std::to_string(i), "duplicate index");
    }
    if (r.data_out.kind == DataOut::Kind::parameter && (r.data_out.parameter < 0 || r.data_out.parameter >= arity))
        throw FormatError(path + "/dataOut", "parameter index " + std::to_string(r.data_out.parameter) + " out of range for " +
                                                 std::to_string(arity) + " parameter(s)");
    if (r.scores) {
        for (double s : *r.scores) {
            if (!(s >= 0 && s <= 1)) throw FormatError(path + "/scores", "scores must lie in [0,1]");
        }
    }
}

std::vector<std::string> warnings(const Dataset& d) {
    std::vector<std::string> out;
    for (const auto& r : d.records) {
        if (r.labels.has_cwe() && !r.labels.has_role())
            out.push_back(r.signature + ": CWE label without a source, sink or sanitizer role");
    }
    return out;
}

ordered_json to_json(const MethodRecord& r) {
    ordered_json j;
    j["signature"] = r.signature;
    j["labels"] = r.labels.ids();
    j["dataIn"] = r.data_in;
    switch (r.data_out.kind) {
    case DataOut::Kind::none: j["dataOut"] = "none"; break;
    case DataOut::Kind::return_value: j["dataOut"] = "return"; break;
    case DataOut::Kind::parameter: j["dataOut"] = ordered_json{{"parameter", r.data_out.parameter}}; break;
    }
    j["discovery"] = std::string(to_string(r.discovery));
    if (r.note) j["note"] = *r.note;
    if (r.scores) {
        ordered_json s = ordered_json::object();
        for (std::size_t i = 0; i < kLabelCount; ++i) s[std::string(kLabelIds[i])] = (*r.scores)[i];
        j["scores"] = s;
    }
    return j;
}

MethodRecord record_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) throw FormatError(path, "record must be an object");
    MethodRecord r;
    if (!j.contains("signature") || !j["signature"].is_string()) throw FormatError(path + "/signature", "missing signature");
    r.signature = j["signature"].get<std::string>();

    if (!j.contains("labels") || !j["labels"].is_array()) throw FormatError(path + "/labels", "missing labels array");
    for (std::size_t i = 0; i < j["labels"].size(); ++i) {
        const auto& l = j["labels"][i];
        auto label = l.is_string() ? parse_label(l.get<std::string>()) : std::nullopt;
        if (!label) throw FormatError(path + "/labels/" + std::to_string(i), "unknown label " + l.dump());
        r.labels.set(*label);
    }

    if (j.contains("dataIn")) {
        if (!j["dataIn"].is_array()) throw FormatError(path + "/dataIn", "dataIn must be an array");
        for (std::size_t i = 0; i < j["dataIn"].size(); ++i) {
            const auto& v = j["dataIn"][i];
            if (!v.is_number_integer()) throw FormatError(path + "/dataIn/" + std::to_string(i), "expected an integer");
            r.data_in.push_back(v.get<int>());
        }
    }

    if (j.contains("dataOut")) {
        const auto& o = j["dataOut"];
        if (o == "return") {
            r.data_out = DataOut::return_value();
        } else if (o == "none") {
            r.data_out = DataOut::none();
        } else if (o.is_object() && o.size() == 1 && o.contains("parameter") && o["parameter"].is_number_integer()) {
            r.data_out = DataOut::param(o["parameter"].get<int>());
        } else {
            throw FormatError(path + "/dataOut", "expected \"return\", \"none\" or {\"parameter\": i}");
        }
    }

    if (j.contains("discovery")) {
        auto d = j["discovery"].is_string() ? parse_discovery(j["discovery"].get<std::string>()) : std::nullopt;
        if (!d) throw FormatError(path + "/discovery", "unknown discovery " + j["discovery"].dump());
        r.discovery = *d;
    }
    if (j.contains("note") && !j["note"].is_null()) {
        if (!j["note"].is_string()) throw FormatError(path + "/note", "note must be a string");
        r.note = j["note"].get<std::string>();
    }
    if (j.contains("scores") && !j["scores"].is_null()) {
        const auto& s = j["scores"];
        if (!s.is_object()) throw FormatError(path + "/scores", "scores must be an object");
        std::array<double, kLabelCount> scores{};
        for (auto it = s.begin(); it != s.end(); ++it) {
            auto label = parse_label(it.key());
            if (!label || !it.value().is_number()) throw FormatError(path + "/scores/" + it.key(), "bad score entry");
            scores[index_of(*label)] = it.value().get<double>();
        }
        r.scores = scores;
    }
    validate_record(r, path);
    return r;
}

Dataset load_dataset(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw FormatError("", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("", "dataset must be a JSON object");
    Dataset d;
    if (doc.contains("version")) {
        if (!doc["version"].is_string()) throw FormatError("/version", "version must be a string");
        d.version = doc["version"].get<std::string>();
    }
    if (!doc.contains("methods") || !doc["methods"].is_array()) throw FormatError("/methods", "missing methods array");
    std::map<std::string, std::size_t> first_index;
    const auto& methods = doc["methods"];
    for (std::size_t i = 0; i < methods.size(); ++i) {
        std::string path = "/methods/" + std::to_string(i);
        auto r = record_from_json(methods[i], path);
        auto [it, fresh] = first_index.emplace(r.signature, i);
        if (!fresh)
            throw FormatError(path + "/signature", "duplicate signature '" + r.signature + "' (records " +
                                                       std::to_string(it->second) + " and " + std::to_string(i) + ")");
        d.records.push_back(std::move(r));
    }
    sort_records(d.records);
    return d;
}

Dataset load_dataset_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(path, "cannot open dataset");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_dataset(buf.str());
    } catch (const FormatError& e) {
        throw FormatError(path + "#" + e.path(), e.reason());
    }
}

std::string save_dataset(const Dataset& d) {
    std::vector<MethodRecord> records = d.records;
    sort_records(records);
    ordered_json doc;
    doc["version"] = d.version;
    doc["methods"] = ordered_json::array();
    for (const auto& r : records) doc["methods"].push_back(to_json(r));
    return doc.dump(2) + "\n";
}

Dataset merge_records(const Dataset& base, const std::vector<MethodRecord>& edits) {
    Dataset out = base;
    for (std::size_t i = 0; i < edits.size(); ++i) {
        MethodRecord e = edits[i];
        validate_record(e, "/edits/" + std::to_string(i));
        e.discovery = Discovery::manual;
        auto it = std::find_if(out.records.begin(), out.records.end(),
                               [&](const MethodRecord& r) { return r.signature == e.signature; });
        if (it != out.records.end()) {
            *it = std::move(e);
        } else {
            out.records.push_back(std::move(e));
        }
    }
    sort_records(out.records);
    return out;
}

Dataset merge_detected(const Dataset& base, const std::vector<MethodRecord>& detected) {
    Dataset out = base;
    for (std::size_t i = 0; i < detected.size(); ++i) {
        MethodRecord e = detected[i];
        validate_record(e, "/detected/" + std::to_string(i));
        e.discovery = Discovery::detected;
        auto it = std::find_if(out.records.begin(), out.records.end(),
                               [&](const MethodRecord& r) { return r.signature == e.signature; });
        if (it == out.records.end()) {
            out.records.push_back(std::move(e));
        } else if (it->discovery == Discovery::detected) {
            *it = std::move(e);
        }
    }
    sort_records(out.records);
    return out;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& d, double train_fraction, std::uint64_t seed) {
    if (d.records.empty()) throw Error("cannot split an empty dataset");
    if (!(train_fraction > 0 && train_fraction < 1)) throw Error("train fraction must lie in (0,1)");
    std::size_t n = d.records.size();
    auto n_train = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * train_fraction - 1e-9));
    Rng rng(seed);
    auto order = permutation(n, rng);
    Dataset train, test;
    train.version = test.version = d.version;
    for (std::size_t i = 0; i < n; ++i) {
        (i < n_train ? train : test).records.push_back(d.records[order[i]]);
    }
    sort_records(train.records);
    sort_records(test.records);
    return {std::move(train), std::move(test)};
}

DatasetStats dataset_stats(const Dataset& d) {
    DatasetStats s;
    s.records = d.records.size();
    std::size_t orphan = 0;
    for (const auto& r : d.records) {
        for (std::size_t i = 0; i < kLabelCount; ++i) {
            if (!r.labels.test(i)) continue;
            ++s.label_counts[i];
            for (std::size_t j = 0; j < kLabelCount; ++j) {
                if (r.labels.test(j)) ++s.cooccurrence[i][j];
            }
        }
        ++s.label_set_histogram[to_string(r.labels)];
        ++s.discovery_counts[std::string(to_string(r.discovery))];
        if (r.labels.has_cwe() && !r.labels.has_role()) ++orphan;
    }
    s.cwe_without_role_fraction = s.records ? static_cast<double>(orphan) / static_cast<double>(s.records) : 0.0;
    return s;
}

ordered_json to_json(const DatasetStats& s) {
    ordered_json j;
    j["records"] = s.records;
    ordered_json counts = ordered_json::object();
    for (std::size_t i = 0; i < kLabelCount; ++i) counts[std::string(kLabelIds[i])] = s.label_counts[i];
    j["labelCounts"] = counts;
    ordered_json hist = ordered_json::array();
    std::vector<std::pair<std::string, std::size_t>> entries(s.label_set_histogram.begin(), s.label_set_histogram.end());
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [set, n] : entries) hist.push_back(ordered_json{{"labels", set}, {"count", n}});
    j["labelSetHistogram"] = hist;
    j["labels"] = kLabelIds;
    j["cooccurrence"] = s.cooccurrence;
    j["cweWithoutRoleFraction"] = s.cwe_without_role_fraction;
    j["discovery"] = s.discovery_counts;
    return j;
}

} // namespace srmforge::dataset
