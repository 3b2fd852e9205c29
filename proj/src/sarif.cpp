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

#include "srmforge/sarif.hpp"

#include <algorithm>
#include <set>

namespace srmforge::sarif {

using nlohmann::ordered_json;

namespace {

ordered_json physical(const std::string& uri, int line) {
    return {{"physicalLocation", {{"artifactLocation", {{"uri", uri}}}, {"region", {{"startLine", line}}}}}};
}

std::string rule_name(Label cwe) {
    std::string out;
    bool upper = true;
    for (char ch : cwe_title(cwe)) {
        if (ch == ' ' || ch == '-') {
            upper = true;
            continue;
        }
        out += upper ? static_cast<char>(std::toupper(static_cast<unsigned char>(ch))) : ch;
        upper = false;
    }
    return out;
}

} // namespace

ordered_json sarif_document(const std::vector<taint::Finding>& findings, const ToolMeta& meta) {
    std::vector<Label> cwes;
    for (const auto& f : findings)
        if (std::find(cwes.begin(), cwes.end(), f.cwe) == cwes.end()) cwes.push_back(f.cwe);
    std::sort(cwes.begin(), cwes.end(), [](Label a, Label b) { return index_of(a) < index_of(b); });

    auto rules = ordered_json::array();
    for (Label c : cwes) {
        const std::string number = std::string(label_id(c)).substr(3);
        rules.push_back({{"id", cwe_rule_id(c)},
                         {"name", rule_name(c)},
                         {"shortDescription", {{"text", std::string(cwe_title(c))}}},
                         {"helpUri", "https://cwe.mitre.org/data/definitions/" + number + ".html"}});
    }

    auto results = ordered_json::array();
    for (const auto& f : findings) {
        auto rule_index = std::find(cwes.begin(), cwes.end(), f.cwe) - cwes.begin();
        auto flow = ordered_json::array();
        for (const auto& s : f.path) {
            auto loc = physical(s.uri, s.line);
            loc["message"] = {{"text", s.description}};
            flow.push_back({{"location", loc}});
        }
        ordered_json r;
        r["ruleId"] = cwe_rule_id(f.cwe);
        r["ruleIndex"] = rule_index;
        r["level"] = "error";
        r["message"] = {{"text", f.message + " (source: " + f.source.uri + ":" + std::to_string(f.source.line) + ")"}};
        r["locations"] = ordered_json::array({physical(f.sink.uri, f.sink.line)});
        r["codeFlows"] = ordered_json::array({{{"threadFlows", ordered_json::array({{{"locations", flow}}})}}});
        r["properties"] = {{"specId", f.spec_id}};
        results.push_back(std::move(r));
    }

    ordered_json driver{{"name", meta.name}, {"version", meta.version}};
    if (!meta.information_uri.empty()) driver["informationUri"] = meta.information_uri;
    driver["rules"] = rules;

    ordered_json doc;
    doc["$schema"] = kSarifSchema;
    doc["version"] = kSarifVersion;
    doc["runs"] = ordered_json::array({{{"tool", {{"driver", driver}}}, {"results", results}}});
    return doc;
}

std::string emit_sarif(const std::vector<taint::Finding>& findings, const ToolMeta& meta) {
    return sarif_document(findings, meta).dump(2) + "\n";
}

namespace {

void check_location(const nlohmann::json& loc, const std::string& path, std::vector<std::string>& problems) {
    const auto* pl = loc.is_object() && loc.contains("physicalLocation") ? &loc["physicalLocation"] : nullptr;
    if (!pl || !pl->is_object()) {
        problems.push_back(path + ": missing physicalLocation");
        return;
    }
    if (!pl->contains("artifactLocation") || !(*pl)["artifactLocation"].is_object() ||
        !(*pl)["artifactLocation"].contains("uri") || !(*pl)["artifactLocation"]["uri"].is_string())
        problems.push_back(path + ": missing artifactLocation.uri");
    if (pl->contains("region")) {
        const auto& region = (*pl)["region"];
        if (!region.is_object() || !region.contains("startLine") || !region["startLine"].is_number_integer() ||
            region["startLine"].get<long long>() < 1)
            problems.push_back(path + ": region.startLine must be an integer >= 1");
    }
}

} // namespace

std::vector<std::string> validate_sarif(const nlohmann::json& doc) {
    std::vector<std::string> problems;
    if (!doc.is_object()) return {"document must be an object"};
    if (!doc.contains("version") || doc["version"] != kSarifVersion) problems.push_back("version must be \"2.1.0\"");
    if (!doc.contains("runs") || !doc["runs"].is_array()) {
        problems.push_back("runs must be an array");
        return problems;
    }
    for (std::size_t i = 0; i < doc["runs"].size(); ++i) {
        const auto& run = doc["runs"][i];
        const std::string rp = "runs/" + std::to_string(i);
        if (!run.is_object() || !run.contains("tool") || !run["tool"].is_object() || !run["tool"].contains("driver") ||
            !run["tool"]["driver"].is_object()) {
            problems.push_back(rp + ": missing tool.driver");
            continue;
        }
        const auto& driver = run["tool"]["driver"];
        if (!driver.contains("name") || !driver["name"].is_string() || driver["name"].get<std::string>().empty())
            problems.push_back(rp + ": tool.driver.name is required");
        std::set<std::string> rule_ids;
        std::vector<std::string> rule_order;
        if (driver.contains("rules")) {
            if (!driver["rules"].is_array()) problems.push_back(rp + ": tool.driver.rules must be an array");
            else
                for (const auto& r : driver["rules"]) {
                    if (!r.is_object() || !r.contains("id") || !r["id"].is_string()) {
                        problems.push_back(rp + ": rule without id");
                        continue;
                    }
                    rule_ids.insert(r["id"].get<std::string>());
                    rule_order.push_back(r["id"].get<std::string>());
                }
        }
        if (!run.contains("results")) continue;
        if (!run["results"].is_array()) {
            problems.push_back(rp + ": results must be an array");
            continue;
        }
        for (std::size_t k = 0; k < run["results"].size(); ++k) {
            const auto& res = run["results"][k];
            const std::string p = rp + "/results/" + std::to_string(k);
            if (!res.is_object()) {
                problems.push_back(p + ": result must be an object");
                continue;
            }
            if (!res.contains("ruleId") || !res["ruleId"].is_string()) problems.push_back(p + ": ruleId is required");
            else if (!rule_ids.count(res["ruleId"].get<std::string>()))
                problems.push_back(p + ": ruleId " + res["ruleId"].get<std::string>() + " is not a declared rule");
            if (res.contains("ruleIndex")) {
                const auto& idx = res["ruleIndex"];
                if (!idx.is_number_integer() || idx.get<long long>() < 0 ||
                    static_cast<std::size_t>(idx.get<long long>()) >= rule_order.size() ||
                    (res.contains("ruleId") && res["ruleId"].is_string() &&
                     rule_order[idx.get<std::size_t>()] != res["ruleId"].get<std::string>()))
                    problems.push_back(p + ": ruleIndex does not point at ruleId");
            }
            if (!res.contains("message") || !res["message"].is_object() || !res["message"].contains("text") ||
                !res["message"]["text"].is_string())
                problems.push_back(p + ": message.text is required");
            if (!res.contains("locations") || !res["locations"].is_array() || res["locations"].empty())
                problems.push_back(p + ": locations must be a non-empty array");
            else
                for (std::size_t l = 0; l < res["locations"].size(); ++l)
                    check_location(res["locations"][l], p + "/locations/" + std::to_string(l), problems);
            if (res.contains("codeFlows")) {
                for (const auto& cf : res["codeFlows"])
                    for (const auto& tf : cf.value("threadFlows", nlohmann::json::array()))
                        for (const auto& tl : tf.value("locations", nlohmann::json::array()))
                            check_location(tl.value("location", nlohmann::json::object()), p + "/codeFlows", problems);
            }
        }
    }
    return problems;
}

} // namespace srmforge::sarif
