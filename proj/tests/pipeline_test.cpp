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


#include <gtest/gtest.h>

#include <algorithm>

#include "srmforge/arff.hpp"
#include "srmforge/pipeline.hpp"
#include "srmforge/random.hpp"
#include "srmforge/sarif.hpp"
#include "test_util.hpp"

using namespace srmforge;
using namespace srmforge::pipeline;
using nlohmann::json;
using srmforge::testing::TempDir;
namespace fs = std::filesystem;

namespace {

int line_of(const fs::path& file, const std::string& needle) {
    std::istringstream in(srmforge::testing::read_file(file));
    std::string line;
    for (int n = 1; std::getline(in, line); ++n)
        if (line.find(needle) != std::string::npos) return n;
    return -1;
}

dataset::Dataset servlet_dataset(bool with_sanitizer) {
    auto d = dataset::load_dataset_file(srmforge::testing::data_file("servlet_srms.json"));
    if (!with_sanitizer) std::erase_if(d.records, [](const auto& r) { return r.labels.has(Label::sanitizer); });
    return d;
}

PipelineConfig config_for(const TempDir& tmp, const fs::path& project, const dataset::Dataset& d) {
    tmp.write("dataset.json", dataset::save_dataset(d));
    PipelineConfig c;
    c.project_root = project;
    c.dataset_path = tmp.path() / "dataset.json";
    c.output_dir = tmp.path() / "out";
    return c;
}

std::vector<std::string> partials(const fs::path& dir) {
    std::vector<std::string> out;
    if (!fs::exists(dir)) return out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".partial") out.push_back(e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST(Pipeline, MutantServletGivesOneSqlResult) {
    TempDir tmp("pipeline");
    auto cfg = config_for(tmp, srmforge::testing::fixture("servlet/mutant"), servlet_dataset(false));
    auto r = run_pipeline(cfg);
    auto file = srmforge::testing::fixture("servlet/mutant/org/demo/Servlet.java");

    ASSERT_EQ(r.findings.size(), 1u);
    EXPECT_EQ(r.findings[0].cwe, Label::cwe89);
    EXPECT_EQ(r.findings[0].source.line, line_of(file, "getParameter"));
    EXPECT_EQ(r.findings[0].sink.line, line_of(file, "executeQuery"));

    auto doc = json::parse(srmforge::testing::read_file(r.sarif_path));
    EXPECT_TRUE(sarif::validate_sarif(doc).empty());
    ASSERT_EQ(doc["runs"][0]["results"].size(), 1u);
    EXPECT_EQ(doc["runs"][0]["results"][0]["ruleId"], "CWE-89");

    for (auto name : kArtifacts) EXPECT_TRUE(fs::is_regular_file(cfg.output_dir / name)) << name;
    EXPECT_EQ(r.artifacts.size(), kArtifacts.size());
    EXPECT_TRUE(partials(cfg.output_dir).empty());
}

TEST(Pipeline, SanitizedServletGivesNoResult) {
    TempDir tmp("pipeline");
    auto r = run_pipeline(config_for(tmp, srmforge::testing::fixture("servlet/sanitized"), servlet_dataset(true)));
    EXPECT_TRUE(r.findings.empty());
}

TEST(Pipeline, RerunGivesIdenticalBytes) {
    TempDir tmp("pipeline");
    auto cfg = config_for(tmp, srmforge::testing::fixture("taint"), servlet_dataset(true));
    run_pipeline(cfg);
    std::map<std::string, std::string> first;
    for (auto name : kArtifacts) first[std::string(name)] = srmforge::testing::read_file(cfg.output_dir / name);
    run_pipeline(cfg);
    for (auto name : kArtifacts)
        EXPECT_EQ(srmforge::testing::read_file(cfg.output_dir / name), first[std::string(name)]) << name;
}

TEST(Pipeline, ProjectWithoutMethodsGivesEmptyResults) {
    TempDir tmp("pipeline");
    tmp.write("project/a/Empty.java", "package a;\n\npublic class Empty {\n}\n");
    auto r = run_pipeline(config_for(tmp, tmp.path() / "project", servlet_dataset(true)));
    EXPECT_TRUE(r.findings.empty());
    auto doc = json::parse(srmforge::testing::read_file(r.sarif_path));
    EXPECT_TRUE(sarif::validate_sarif(doc).empty());
    EXPECT_TRUE(doc["runs"][0]["results"].empty());
}

TEST(Pipeline, ManualRecordsSurviveDetection) {
    // Property: whatever the model predicts, a manual record comes out unchanged.
    auto project = program::index_program(program::load_project(srmforge::testing::fixture("taint"))).program;
    auto methods = project.methods();
    Rng rng(31);
    for (int trial = 0; trial < 4; ++trial) {
        TempDir tmp("pipeline");
        auto d = servlet_dataset(true);
        std::vector<dataset::MethodRecord> manual;
        for (const auto* m : methods) {
            if (uniform_below(rng, 3) != 0) continue;
            dataset::MethodRecord r;
            r.signature = program::canonical_signature(*m);
            r.labels = LabelSet::from_bits(static_cast<unsigned>(uniform_below(rng, 1u << kLabelCount)));
            manual.push_back(r);
        }
        d = dataset::merge_records(d, manual);
        auto out = run_pipeline(config_for(tmp, srmforge::testing::fixture("taint"), d));
        for (const auto& want : manual) {
            const auto* got = out.dataset.find(want.signature);
            ASSERT_NE(got, nullptr);
            EXPECT_EQ(got->labels, want.labels) << want.signature;
            EXPECT_EQ(got->discovery, dataset::Discovery::manual);
            EXPECT_EQ(*got, *d.find(want.signature));
        }
    }
}

TEST(Pipeline, DetectedRecordsCarryScores) {
    TempDir tmp("pipeline");
    auto r = run_pipeline(config_for(tmp, srmforge::testing::fixture("taint"), servlet_dataset(true)));
    for (const auto& rec : r.dataset.records) {
        if (rec.discovery != dataset::Discovery::detected) continue;
        EXPECT_FALSE(rec.labels.empty());
        ASSERT_TRUE(rec.scores.has_value());
    }
}

TEST(Pipeline, StageFailureKeepsPartialArtifacts) {
    TempDir tmp("pipeline");
    auto cfg = config_for(tmp, srmforge::testing::fixture("servlet/mutant"), servlet_dataset(false));
    tmp.write("broken-model.json", "{\"format\": \"nope\"}");
    cfg.model_path = tmp.path() / "broken-model.json";
    try {
        run_pipeline(cfg);
        FAIL() << "expected a stage error";
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage(), "model");
        EXPECT_EQ(std::string(e.what()).rfind("model: ", 0), 0u);
    }
    EXPECT_EQ(partials(cfg.output_dir), std::vector<std::string>{"features.arff.partial"});
    EXPECT_FALSE(fs::exists(cfg.output_dir / "findings.sarif"));
}

TEST(Pipeline, FailedRunRemovesStaleResults) {
    TempDir tmp("pipeline");
    auto cfg = config_for(tmp, srmforge::testing::fixture("servlet/mutant"), servlet_dataset(false));
    run_pipeline(cfg);
    tmp.write("dataset.json", "{\"version\": \"1\", \"methods\": [{\"signature\": \"bad\"}]}");
    EXPECT_THROW(run_pipeline(cfg), StageError);
    EXPECT_FALSE(fs::exists(cfg.output_dir / "findings.sarif"));
}

TEST(Pipeline, InvalidConfigIsReported) {
    TempDir tmp("pipeline");
    auto cfg = config_for(tmp, tmp.path() / "missing", servlet_dataset(true));
    try {
        run_pipeline(cfg);
        FAIL();
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage(), "config");
    }
}

TEST(Pipeline, ProgressVisitsEveryStageAndCanCancel) {
    TempDir tmp("pipeline");
    auto cfg = config_for(tmp, srmforge::testing::fixture("servlet/mutant"), servlet_dataset(false));
    std::vector<std::string> seen;
    std::vector<double> fractions;
    run_pipeline(cfg, [&](std::string_view s, double f) {
        seen.emplace_back(s);
        fractions.push_back(f);
    });
    std::vector<std::string> want(kStages.begin(), kStages.end());
    want.push_back("done");
    EXPECT_EQ(seen, want);
    EXPECT_TRUE(std::is_sorted(fractions.begin(), fractions.end()));
    EXPECT_EQ(fractions.back(), 1.0);

    EXPECT_THROW(run_pipeline(cfg,
                              [](std::string_view s, double) {
                                  if (s == "analyze") throw Cancelled();
                              }),
                 Cancelled);
}

TEST(Pipeline, ArffArtifactHasLabelsThenFeatures) {
    TempDir tmp("pipeline");
    auto cfg = config_for(tmp, srmforge::testing::fixture("servlet/mutant"), servlet_dataset(true));
    run_pipeline(cfg);
    auto text = srmforge::testing::read_file(cfg.output_dir / "features.arff");
    auto doc = arff::parse(text);
    EXPECT_EQ(doc.attributes.size(), 129u);
    EXPECT_EQ(arff::label_count_marker(doc.relation), 10);
    EXPECT_EQ(doc.rows.size(), 3u);
    auto rows = arff::read_labeled(text, features::default_schema());
    EXPECT_EQ(arff::emit(rows, features::default_schema()), text);
}

TEST(Pipeline, ConfigJson) {
    json j = {{"projectRoot", "proj"},
              {"dataset", "/abs/d.json"},
              {"cwes", {"cwe89", "cwe79"}},
              {"analysis", {{"maxCallDepth", 3}, {"matchMode", "exact"}}},
              {"outputDir", "out"}};
    auto c = pipeline_config_from_json(j, "/base");
    EXPECT_EQ(c.project_root, fs::path("/base/proj"));
    EXPECT_EQ(c.dataset_path, fs::path("/abs/d.json"));
    EXPECT_FALSE(c.model_path.has_value());
    EXPECT_EQ(c.cwe_filter, (std::vector<Label>{Label::cwe89, Label::cwe79}));
    EXPECT_EQ(c.analysis.max_call_depth, 3);
    auto back = pipeline_config_from_json(to_json(c));
    EXPECT_EQ(to_json(back), to_json(c));

    EXPECT_THROW(pipeline_config_from_json({{"bogus", 1}}), FormatError);
    try {
        pipeline_config_from_json({{"cwes", {"cwe89", "sink"}}});
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_EQ(e.path(), "/cwes/1");
    }
}

TEST(TrainingRows, DetectedRecordsAreNotTrainedOn) {
    auto d = servlet_dataset(true);
    dataset::MethodRecord r;
    r.signature = "a.B.c(String)";
    r.labels = {Label::sink};
    d = dataset::merge_detected(d, {r});
    auto t = training_matrix(d);
    EXPECT_EQ(t.size(), 3u);
    EXPECT_NO_THROW(t.check());
}

TEST(TrainingRows, FallbackToBinaryRelevanceIsReported) {
    auto t = training_matrix(servlet_dataset(true));
    ml::ModelConfig eps;
    auto out = train_with_fallback(t, eps);
    EXPECT_EQ(out.model.kind, ml::ModelKind::binary_relevance);
    ASSERT_EQ(out.diagnostics.size(), 1u);
    EXPECT_NE(out.diagnostics[0].find("br/logistic"), std::string::npos);

    ml::ModelConfig br;
    br.kind = ml::ModelKind::binary_relevance;
    EXPECT_TRUE(train_with_fallback(t, br).diagnostics.empty());
    EXPECT_THROW(train_with_fallback(training_matrix(dataset::Dataset{}), eps), TooFewRows);
}
