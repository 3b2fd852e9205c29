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

#include <future>
#include <thread>

#include "httplib.h"
#include "srmforge/pipeline.hpp"
#include "srmforge/sarif.hpp"
#include "srmforge/service.hpp"
#include "test_util.hpp"

using namespace srmforge;
using namespace srmforge::service;
using namespace std::chrono_literals;
using nlohmann::json;
using srmforge::testing::TempDir;
namespace fs = std::filesystem;

// ---- job manager --------------------------------------------------------

namespace {

/// Work function whose jobs block until released.
struct Gate {
    std::promise<void> release;
    std::shared_future<void> opened = release.get_future().share();
    std::atomic<int> runs{0};

    JobManager::Work work() {
        return [this](const Job&, const JobManager::ProgressFn& progress, const std::atomic<bool>& cancelled) {
            ++runs;
            progress(0.5);
            while (opened.wait_for(1ms) != std::future_status::ready) {
                if (cancelled.load()) throw pipeline::Cancelled();
            }
            return std::string("result");
        };
    }
};

void wait_for_status(const JobManager& m, const std::string& id, JobStatus s) {
    for (int i = 0; i < 2000 && m.get(id)->status != s; ++i) std::this_thread::sleep_for(1ms);
    ASSERT_EQ(m.get(id)->status, s);
}

} // namespace

TEST(Jobs, QueuedRunningDone) {
    Gate gate;
    JobManager m(gate.work());
    auto job = m.submit(JobKind::detect);
    EXPECT_EQ(job.status, JobStatus::queued);
    EXPECT_EQ(job.id, "job-1");
    wait_for_status(m, job.id, JobStatus::running);
    gate.release.set_value();
    auto done = m.wait(job.id, 5s);
    EXPECT_EQ(done.status, JobStatus::done);
    EXPECT_EQ(done.result_ref, "result");
    EXPECT_EQ(done.progress, 1.0);
    EXPECT_EQ(m.transitions(job.id), (std::vector<JobStatus>{JobStatus::queued, JobStatus::running, JobStatus::done}));
}

TEST(Jobs, SecondMutatingJobConflicts) {
    Gate gate;
    JobManager m(gate.work());
    auto first = m.submit(JobKind::pipeline);
    EXPECT_THROW(m.submit(JobKind::pipeline), ConflictError);
    EXPECT_THROW(m.submit(JobKind::detect), ConflictError);
    EXPECT_NO_THROW(m.submit(JobKind::analyze));
    gate.release.set_value();
    m.wait(first.id, 5s);
    EXPECT_NO_THROW(m.submit(JobKind::train));
}

TEST(Jobs, CancelledQueuedJobNeverRuns) {
    Gate gate;
    JobManager m(gate.work());
    auto first = m.submit(JobKind::pipeline);
    wait_for_status(m, first.id, JobStatus::running);
    auto second = m.submit(JobKind::analyze);
    auto c = m.cancel(second.id);
    EXPECT_EQ(c.status, JobStatus::failed);
    EXPECT_EQ(c.error, "cancelled");
    gate.release.set_value();
    m.wait(first.id, 5s);
    std::this_thread::sleep_for(20ms);
    EXPECT_EQ(gate.runs.load(), 1);
    EXPECT_EQ(m.transitions(second.id), (std::vector<JobStatus>{JobStatus::queued, JobStatus::failed}));
}

TEST(Jobs, CancelRunningJob) {
    Gate gate;
    JobManager m(gate.work());
    auto job = m.submit(JobKind::train);
    wait_for_status(m, job.id, JobStatus::running);
    m.cancel(job.id);
    auto end = m.wait(job.id, 5s);
    EXPECT_EQ(end.status, JobStatus::failed);
    EXPECT_EQ(end.error, "cancelled");
    gate.release.set_value();
}

TEST(Jobs, FailureCarriesTheError) {
    JobManager m([](const Job&, const JobManager::ProgressFn&, const std::atomic<bool>&) -> std::string {
        throw Error("boom");
    });
    auto job = m.submit(JobKind::detect);
    auto end = m.wait(job.id, 5s);
    EXPECT_EQ(end.status, JobStatus::failed);
    EXPECT_EQ(end.error, "boom");
    EXPECT_THROW(m.cancel("job-99"), NotFound);
    EXPECT_FALSE(m.get("job-99").has_value());
}

TEST(Jobs, ProgressNeverMovesBackwards) {
    std::vector<double> seen;
    JobManager* self = nullptr;
    JobManager m([&](const Job& j, const JobManager::ProgressFn& p, const std::atomic<bool>&) {
        for (double f : {0.2, 0.6, 0.4, 0.9}) {
            p(f);
            seen.push_back(self->get(j.id)->progress);
        }
        return std::string();
    });
    self = &m;
    m.wait(m.submit(JobKind::train).id, 5s);
    EXPECT_EQ(seen, (std::vector<double>{0.2, 0.6, 0.6, 0.9}));
}

// ---- HTTP ---------------------------------------------------------------

namespace {

class ServiceFixture : public ::testing::Test {
protected:
    void SetUp() override {
        fs::copy(srmforge::testing::fixture("servlet/sanitized"), tmp_.path() / "project", fs::copy_options::recursive);
        fs::copy_file(srmforge::testing::data_file("servlet_srms.json"), tmp_.path() / "dataset.json");
        ServiceOptions o;
        o.project_root = tmp_.path() / "project";
        o.dataset_path = tmp_.path() / "dataset.json";
        o.output_dir = tmp_.path() / "out";
        service_ = std::make_unique<Service>(o);
        service_->mount(server_);
        port_ = server_.bind_to_any_port("127.0.0.1");
        ASSERT_GT(port_, 0);
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
        client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    }

    void TearDown() override {
        server_.stop();
        thread_.join();
        service_.reset();
    }

    json get(const std::string& path, int want = 200) {
        auto r = client_->Get(path);
        EXPECT_TRUE(r) << path;
        if (!r) return {};
        EXPECT_EQ(r->status, want) << path << ": " << r->body;
        return json::parse(r->body);
    }

    json send(const std::string& method, const std::string& path, const json& body, int want) {
        httplib::Result r = method == "PATCH" ? client_->Patch(path, body.dump(), "application/json")
                            : method == "PUT" ? client_->Put(path, body.dump(), "application/json")
                                              : client_->Post(path, body.dump(), "application/json");
        EXPECT_TRUE(r) << path;
        if (!r) return {};
        EXPECT_EQ(r->status, want) << path << ": " << r->body;
        return json::parse(r->body);
    }

    json run(const std::string& kind) {
        auto job = send("POST", "/api/jobs", {{"kind", kind}}, 202);
        EXPECT_EQ(job["status"], "queued");
        auto done = service_->jobs().wait(job["id"], 60s);
        EXPECT_EQ(done.status, JobStatus::done) << done.error.value_or("");
        return get("/api/jobs/" + job["id"].get<std::string>());
    }

    std::string enc(const std::string& s) { return httplib::detail::encode_url(s); }

    TempDir tmp_{"service"};
    std::unique_ptr<Service> service_;
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
    std::unique_ptr<httplib::Client> client_;
};

const std::string kSanitizer = "org.owasp.esapi.Encoder.encodeForSQL(Codec,String)";

} // namespace

TEST_F(ServiceFixture, SettingsFirstRun) {
    auto s = get("/api/settings");
    EXPECT_FALSE(s["exists"].get<bool>());
    auto put = send("PUT", "/api/settings", {{"analysis", {{"maxCallDepth", 3}}}, {"cwes", {"cwe89"}}}, 200);
    EXPECT_TRUE(put["exists"].get<bool>());
    s = get("/api/settings");
    EXPECT_TRUE(s["exists"].get<bool>());
    EXPECT_EQ(s["settings"]["analysis"]["maxCallDepth"], 3);
    EXPECT_TRUE(fs::is_regular_file(tmp_.path() / "project/.srm-forge/settings.json"));

    auto err = send("PUT", "/api/settings", {{"cwes", {"sink"}}}, 400);
    EXPECT_EQ(err["code"], "invalid");
    EXPECT_EQ(err["path"], "/cwes/0");
}

TEST_F(ServiceFixture, MethodFilters) {
    EXPECT_EQ(get("/api/methods").size(), 3u);
    auto san = get("/api/methods?label=sanitizer");
    ASSERT_EQ(san.size(), 1u);
    EXPECT_EQ(san[0]["signature"], kSanitizer);
    EXPECT_EQ(san[0]["class"], "org.owasp.esapi.Encoder");
    EXPECT_EQ(get("/api/methods?class=Statement").size(), 1u);
    EXPECT_EQ(get("/api/methods?discovery=training&label=cwe89").size(), 3u);
    EXPECT_EQ(get("/api/methods?discovery=manual").size(), 0u);
    EXPECT_EQ(get("/api/methods?label=bogus", 400)["code"], "invalid");

    EXPECT_EQ(get("/api/methods/" + enc(kSanitizer))["dataIn"], json({1}));
    EXPECT_EQ(get("/api/methods/" + enc("a.B.c()"), 404)["code"], "not_found");
}

TEST_F(ServiceFixture, EditingTheSanitizerTogglesTheFinding) {
    EXPECT_EQ(get("/api/export/sarif", 404)["code"], "not_found");
    EXPECT_FALSE(get("/api/findings")["analyzed"].get<bool>());

    run("pipeline");
    EXPECT_TRUE(get("/api/findings")["findings"].empty());

    auto row = send("PATCH", "/api/methods/" + enc(kSanitizer), {{"labels", {"cwe89"}}}, 200);
    EXPECT_EQ(row["discovery"], "manual");
    EXPECT_EQ(row["labels"], json({"cwe89"}));
    EXPECT_EQ(dataset::load_dataset_file((tmp_.path() / "dataset.json").string()).find(kSanitizer)->discovery,
              dataset::Discovery::manual);

    auto job = run("pipeline");
    EXPECT_EQ(job["status"], "done");
    auto findings = get("/api/findings")["findings"];
    ASSERT_EQ(findings.size(), 1u);
    EXPECT_EQ(findings[0]["cwe"], "cwe89");
    auto sarif_res = client_->Get("/api/export/sarif");
    ASSERT_TRUE(sarif_res);
    auto doc = json::parse(sarif_res->body);
    EXPECT_TRUE(sarif::validate_sarif(doc).empty());
    EXPECT_EQ(doc["runs"][0]["results"].size(), 1u);

    send("PATCH", "/api/methods/" + enc(kSanitizer), {{"labels", {"sanitizer", "cwe89"}}}, 200);
    run("analyze");
    EXPECT_TRUE(get("/api/findings")["findings"].empty());
}

TEST_F(ServiceFixture, InvalidEditIsRejectedAndNothingChanges) {
    auto before = service_->dataset_snapshot();
    auto err = send("PATCH", "/api/methods/" + enc(kSanitizer), {{"dataIn", {5}}}, 400);
    EXPECT_EQ(err["code"], "invalid");
    EXPECT_EQ(err["path"], "/dataIn/0");
    EXPECT_EQ(send("PATCH", "/api/methods/" + enc(kSanitizer), {{"discovery", "training"}}, 400)["path"], "/discovery");
    EXPECT_EQ(service_->dataset_snapshot(), before);

    auto r = client_->Patch("/api/methods/" + enc(kSanitizer), "{not json", "application/json");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 400);
    EXPECT_EQ(json::parse(r->body)["code"], "bad_request");
}

TEST_F(ServiceFixture, DetectAddsProjectMethods) {
    run("detect");
    for (const auto& row : get("/api/methods?discovery=detected")) {
        EXPECT_FALSE(row["labels"].empty());
        EXPECT_TRUE(row.contains("scores"));
    }
    EXPECT_EQ(get("/api/methods?discovery=training").size(), 3u);
}

TEST_F(ServiceFixture, TrainWritesAModel) {
    auto job = run("train");
    EXPECT_TRUE(fs::is_regular_file(job["resultRef"].get<std::string>()));
}

TEST_F(ServiceFixture, JobRequests) {
    EXPECT_EQ(send("POST", "/api/jobs", {{"kind", "compile"}}, 400)["path"], "/kind");
    EXPECT_EQ(send("POST", "/api/jobs", {{"kind", "analyze"}, {"config", {{"cwes", {1}}}}}, 400)["path"],
              "/config/cwes/0");
    EXPECT_EQ(get("/api/jobs/job-42", 404)["code"], "not_found");
    run("analyze");
    EXPECT_EQ(get("/api/jobs").size(), 1u);
}

TEST_F(ServiceFixture, StatsAndSource) {
    auto stats = get("/api/stats");
    EXPECT_EQ(stats["records"], 3);

    auto src = get("/api/source?uri=org/demo/Servlet.java&start=1&end=3");
    EXPECT_EQ(src["lines"].size(), 3u);
    EXPECT_EQ(src["lines"][0]["line"], 1);
    EXPECT_EQ(get("/api/source?uri=../dataset.json", 404)["code"], "not_found");
    EXPECT_EQ(get("/api/source", 400)["path"], "/uri");
}
