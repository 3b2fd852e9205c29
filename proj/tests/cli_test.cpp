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

#include <sys/wait.h>

#include <cstdlib>

#include "json.hpp"
#include "srmforge/dataset.hpp"
#include "srmforge/pipeline.hpp"
#include "test_util.hpp"

using namespace srmforge;
using nlohmann::json;
using srmforge::testing::TempDir;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const TempDir& tmp, const std::string& args) {
    auto log = tmp.path() / "cli.log";
    std::string cmd = std::string("\"") + SRMFORGE_CLI + "\" " + args + " >\"" + log.string() + "\" 2>&1";
    int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, srmforge::testing::read_file(log)};
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

std::string mutant_dataset(const TempDir& tmp) {
    auto d = dataset::load_dataset_file(srmforge::testing::data_file("servlet_srms.json"));
    std::erase_if(d.records, [](const auto& r) { return r.labels.has(Label::sanitizer); });
    tmp.write("mutant.json", dataset::save_dataset(d));
    return q(tmp.path() / "mutant.json");
}

} // namespace

TEST(Cli, ExitCodes) {
    TempDir tmp("cli");
    auto project = q(srmforge::testing::fixture("servlet/mutant"));
    auto base = "pipeline --project " + project + " --dataset " + mutant_dataset(tmp) + " --out-dir ";
    EXPECT_EQ(cli(tmp, base + q(tmp.path() / "a")).code, 0);
    auto failing = cli(tmp, base + q(tmp.path() / "b") + " --fail-on-findings");
    EXPECT_EQ(failing.code, 1);
    EXPECT_NE(failing.out.find("1 finding(s)"), std::string::npos);
    EXPECT_EQ(cli(tmp, "pipeline --project /does/not/exist --dataset x --out-dir y").code, 2);
    EXPECT_EQ(cli(tmp, "pipeline --dataset x").code, 2);
    EXPECT_EQ(cli(tmp, "no-such-command").code, 2);
    EXPECT_EQ(cli(tmp, "--help").code, 0);
}

TEST(Cli, ConfigFileOverridesFlags) {
    TempDir tmp("cli");
    tmp.write("cfg.json", json{{"project", srmforge::testing::fixture("servlet/mutant").string()},
                               {"depth", 0},
                               {"cwe", {"cwe89"}}}
                              .dump());
    auto r = cli(tmp, "pipeline --project /nowhere --depth 5 --dataset " + mutant_dataset(tmp) + " --out-dir " +
                          q(tmp.path() / "out") + " --config " + q(tmp.path() / "cfg.json"));
    ASSERT_EQ(r.code, 0) << r.out;
    auto cfg = json::parse(srmforge::testing::read_file(tmp.path() / "out/analysis-config.json"));
    EXPECT_EQ(cfg["maxCallDepth"], 0);
    auto specs = json::parse(srmforge::testing::read_file(tmp.path() / "out/specs.json"));
    ASSERT_EQ(specs["specs"].size(), 1u);
    EXPECT_EQ(specs["specs"][0]["cwe"], "cwe89");

    tmp.write("bad.json", "{\"nope\": 1}");
    auto bad = cli(tmp, "specgen --dataset x --config " + q(tmp.path() / "bad.json"));
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.out.find("nope"), std::string::npos);
}

TEST(Cli, ModuleCommandsChain) {
    TempDir tmp("cli");
    auto data = q(srmforge::testing::data_file("servlet_srms.json"));
    auto project = q(srmforge::testing::fixture("servlet/mutant"));
    ASSERT_EQ(cli(tmp, "dataset validate " + data).code, 0);
    ASSERT_EQ(cli(tmp, "specgen --dataset " + mutant_dataset(tmp) + " -o " + q(tmp.path() / "specs.json")).code, 0);
    auto analyze = cli(tmp, "analyze --project " + project + " --specs " + q(tmp.path() / "specs.json") + " -o " +
                                q(tmp.path() / "f.sarif") + " --fail-on-findings");
    EXPECT_EQ(analyze.code, 1);
    auto sarif = json::parse(srmforge::testing::read_file(tmp.path() / "f.sarif"));
    EXPECT_EQ(sarif["runs"][0]["results"].size(), 1u);

    ASSERT_EQ(cli(tmp, "features extract --project " + project + " --dataset " + data + " -o " + q(tmp.path() / "f.arff")).code, 0);
    ASSERT_EQ(cli(tmp, "ml train --kind br --dataset " + data + " -o " + q(tmp.path() / "m.json")).code, 0);
    ASSERT_EQ(cli(tmp, "eval --dataset " + data + " --model " + q(tmp.path() / "m.json") + " -o " + q(tmp.path() / "e.json")).code, 0);
    auto metrics = json::parse(srmforge::testing::read_file(tmp.path() / "e.json"));
    EXPECT_TRUE(metrics.contains("macroF1"));
    ASSERT_EQ(cli(tmp, "ml predict --project " + project + " --model " + q(tmp.path() / "m.json") + " -o " + q(tmp.path() / "p.json")).code, 0);
    EXPECT_EQ(json::parse(srmforge::testing::read_file(tmp.path() / "p.json")).size(), 1u);

    EXPECT_EQ(cli(tmp, "dataset validate " + q(tmp.path() / "missing.json")).code, 2);
}
