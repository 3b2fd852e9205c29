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
#include <set>

#include "srmforge/error.hpp"
#include "srmforge/random.hpp"
#include "srmforge/spec.hpp"
#include "test_util.hpp"

using namespace srmforge;
using namespace srmforge::spec;
using dataset::Dataset;
using dataset::DataOut;
using dataset::MethodRecord;

namespace {

Dataset servlet() { return dataset::load_dataset_file(srmforge::testing::data_file("servlet_srms.json")); }
Dataset corpus() { return dataset::load_dataset_file(srmforge::testing::data_file("srm_dataset.json")); }

MethodRecord record(std::string sig, LabelSet labels, std::vector<int> in = {}, DataOut out = DataOut::none()) {
    MethodRecord r;
    r.signature = std::move(sig);
    r.labels = labels;
    r.data_in = std::move(in);
    r.data_out = out;
    return r;
}

} // namespace

TEST(GenerateSpecs, ServletRecordsGiveOneSqlSpec) {
    auto res = generate_specs(servlet());
    ASSERT_EQ(res.specs.size(), 1u);
    const auto& s = res.specs[0];
    EXPECT_EQ(s.cwe, Label::cwe89);
    ASSERT_EQ(s.sources.size(), 1u);
    ASSERT_EQ(s.sinks.size(), 1u);
    ASSERT_EQ(s.sanitizers.size(), 1u);
    EXPECT_TRUE(s.propagators.empty());
    EXPECT_EQ(s.sources[0].pattern.signature, "javax.servlet.http.HttpServletRequest.getParameter(String)");
    EXPECT_EQ(s.sources[0].out, DataOut::return_value());
    EXPECT_EQ(s.sinks[0].pattern.signature, "java.sql.Statement.executeQuery(String)");
    EXPECT_EQ(s.sinks[0].in, std::vector<int>{0});
    EXPECT_EQ(s.sanitizers[0].in, std::vector<int>{1});
    EXPECT_EQ(s.sanitizers[0].out, DataOut::return_value());
    EXPECT_TRUE(validate_spec(s).empty());
    EXPECT_TRUE(spec_warnings(s).empty());
    EXPECT_EQ(res.diagnostics.size(), 6u);
}

TEST(GenerateSpecs, EmptyDatasetGivesSevenDiagnostics) {
    auto res = generate_specs(Dataset{});
    EXPECT_TRUE(res.specs.empty());
    EXPECT_EQ(res.diagnostics.size(), 7u);
}

TEST(GenerateSpecs, GeneralSourceFillsInForCweSink) {
    Dataset d;
    d.records = {record("a.Req.header(String)", {Label::source}, {}, DataOut::return_value()),
                 record("a.Resp.sendRedirect(String)", {Label::sink, Label::cwe601}, {0})};
    auto res = generate_specs(d);
    ASSERT_EQ(res.specs.size(), 1u);
    EXPECT_EQ(res.specs[0].cwe, Label::cwe601);
    ASSERT_EQ(res.specs[0].sources.size(), 1u);
    EXPECT_EQ(res.specs[0].sources[0].pattern.signature, "a.Req.header(String)");
}

TEST(GenerateSpecs, SpecificRolesWinOverGeneralOnes) {
    Dataset d;
    d.records = {record("a.Req.header(String)", {Label::source}, {}, DataOut::return_value()),
                 record("a.Req.param(String)", {Label::source, Label::cwe89}, {}, DataOut::return_value()),
                 record("a.Db.run(String)", {Label::sink}),
                 record("a.Db.query(String,int)", {Label::sink, Label::cwe78})};
    auto res = generate_specs(d, std::vector<Label>{Label::cwe89, Label::cwe78});
    ASSERT_EQ(res.specs.size(), 2u);
    // sorted by cwe id text
    EXPECT_EQ(res.specs[0].cwe, Label::cwe78);
    EXPECT_EQ(res.specs[0].sources[0].pattern.signature, "a.Req.header(String)");
    EXPECT_EQ(res.specs[0].sinks[0].in, (std::vector<int>{0, 1}));
    EXPECT_EQ(res.specs[1].cwe, Label::cwe89);
    ASSERT_EQ(res.specs[1].sources.size(), 1u);
    EXPECT_EQ(res.specs[1].sources[0].pattern.signature, "a.Req.param(String)");
    EXPECT_EQ(res.specs[1].sinks[0].pattern.signature, "a.Db.run(String)");
}

TEST(GenerateSpecs, FilterIgnoresRoleLabels) {
    auto res = generate_specs(servlet(), std::vector<Label>{Label::source, Label::cwe89, Label::cwe89});
    EXPECT_EQ(res.specs.size(), 1u);
    EXPECT_TRUE(res.diagnostics.empty());
}

TEST(GenerateSpecs, OrderInvariantTraceableAndValid) {
    auto d = corpus();
    auto base = generate_specs(d);
    ASSERT_FALSE(base.specs.empty());
    std::set<std::string> signatures;
    for (const auto& r : d.records) signatures.insert(r.signature);
    for (const auto& s : base.specs) {
        EXPECT_TRUE(validate_spec(s).empty()) << s.id;
        for (const auto& x : s.sources) EXPECT_TRUE(signatures.count(x.pattern.signature));
        for (const auto& x : s.sinks) EXPECT_TRUE(signatures.count(x.pattern.signature));
        for (const auto& x : s.sanitizers) EXPECT_TRUE(signatures.count(x.pattern.signature));
    }
    Rng rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        auto shuffled = d;
        shuffle_in_place(shuffled.records, rng);
        auto again = generate_specs(shuffled);
        EXPECT_EQ(again.specs, base.specs);
        EXPECT_EQ(again.diagnostics, base.diagnostics);
    }
}

TEST(ValidateSpec, ReportsMissingSinkAndBadIndices) {
    auto s = generate_specs(servlet()).specs.at(0);
    auto no_sink = s;
    no_sink.sinks.clear();
    auto problems = validate_spec(no_sink);
    ASSERT_EQ(problems.size(), 1u);
    EXPECT_EQ(problems[0], "spec must define at least one sink");

    auto bad = s;
    bad.sinks.push_back({{"a.B.c(int,int)", MatchMode::exact}, {5}});
    problems = validate_spec(bad);
    ASSERT_EQ(problems.size(), 1u);
    EXPECT_NE(problems[0].find("out of range for arity 2"), std::string::npos);

    auto loose = s;
    loose.sinks.push_back({{"*.c(?,?)", MatchMode::name_and_arity}, {5}});
    EXPECT_TRUE(validate_spec(loose).empty());
    loose.sinks.back().pattern.match_mode = MatchMode::exact;
    EXPECT_FALSE(validate_spec(loose).empty());
}

TEST(ValidateSpec, WarnsOnOverlappingRoles) {
    auto s = generate_specs(servlet()).specs.at(0);
    s.sinks.push_back({s.sources[0].pattern, {0}});
    EXPECT_TRUE(validate_spec(s).empty());
    auto w = spec_warnings(s);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_NE(w[0].find("sink, source"), std::string::npos);
}

TEST(SpecFileTest, RoundTripsAndRejectsBadDocuments) {
    SpecFile f;
    f.specs = generate_specs(corpus()).specs;
    f.specs[0].propagators.push_back({{"java.lang.StringBuilder.append(String)", MatchMode::exact}, {0}, DataOut::return_value()});
    auto text = save_specs(f);
    EXPECT_EQ(load_specs(text), f);
    EXPECT_EQ(save_specs(load_specs(text)), text);

    EXPECT_THROW(load_specs("[]"), FormatError);
    EXPECT_THROW(load_specs(R"j({"version":"2","specs":[]})j"), FormatError);
    try {
        load_specs(R"j({"version":"1","specs":[{"id":"x","cwe":"cwe89","sources":[{"signature":"a.B.c()"}],"sinks":[]}]})j");
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_EQ(e.path(), "/specs/0");
    }
    try {
        load_specs(R"j({"version":"1","specs":[{"id":"x","cwe":"sink"}]})j");
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_EQ(e.path(), "/specs/0/cwe");
    }
    auto dup = to_json(f);
    dup["specs"].push_back(dup["specs"][0]);
    EXPECT_THROW(load_specs(dup.dump()), FormatError);
}

TEST(SpecFileTest, SinkWithoutInDefaultsToAllParameters) {
    auto f = load_specs(R"j({"version":"1","specs":[{"id":"x","cwe":"cwe79",
        "sources":[{"signature":"a.Req.get()"}],
        "sinks":[{"signature":"a.Out.write(String,int)"}]}]})j");
    EXPECT_EQ(f.specs[0].sinks[0].in, (std::vector<int>{0, 1}));
    EXPECT_EQ(f.specs[0].sources[0].out, DataOut::return_value());
}
