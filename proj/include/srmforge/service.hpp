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

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "srmforge/dataset.hpp"
#include "srmforge/error.hpp"
#include "srmforge/ml/multilabel.hpp"
#include "srmforge/taint.hpp"

namespace httplib {
class Server;
}

namespace srmforge::service {

enum class JobKind { detect, train, pipeline, analyze };
enum class JobStatus { queued, running, done, failed };

std::string_view to_string(JobKind k);
std::string_view to_string(JobStatus s);
std::optional<JobKind> parse_job_kind(std::string_view s);

struct Job {
    std::string id;
    JobKind kind = JobKind::pipeline;
    JobStatus status = JobStatus::queued;
    double progress = 0;
    std::optional<std::string> result_ref;
    std::optional<std::string> error;
    nlohmann::json config = nlohmann::json::object();
};

nlohmann::ordered_json to_json(const Job& j);

class ConflictError : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

/// Detect, train and pipeline jobs change the dataset or model; analyze only reads them.
bool is_mutating(JobKind k);

/// Single background worker running jobs in submission order.
class JobManager {
public:
    using ProgressFn = std::function<void(double)>;
    /// Returns the result reference. Throwing pipeline::Cancelled marks the job cancelled.
    using Work = std::function<std::string(const Job&, const ProgressFn&, const std::atomic<bool>& cancelled)>;

    explicit JobManager(Work work);
    ~JobManager();
    JobManager(const JobManager&) = delete;
    JobManager& operator=(const JobManager&) = delete;

    /// Throws ConflictError when a mutating job is submitted while another is queued or running.
    Job submit(JobKind kind, nlohmann::json config = nlohmann::json::object());
    std::optional<Job> get(const std::string& id) const;
    std::vector<Job> list() const;
    /// Queued jobs fail at once with error "cancelled"; running jobs are asked to stop.
    Job cancel(const std::string& id);
    /// Blocks until the job is done or failed, or the timeout passes; returns the last state seen.
    Job wait(const std::string& id, std::chrono::milliseconds timeout) const;
    /// Every status the job has been in, in order.
    std::vector<JobStatus> transitions(const std::string& id) const;

private:
    struct Entry {
        Job job;
        std::vector<JobStatus> history;
        std::shared_ptr<std::atomic<bool>> cancelled = std::make_shared<std::atomic<bool>>(false);
    };

    void loop();
    void set_status(Entry& e, JobStatus s);
    const Entry& entry(const std::string& id) const;

    Work work_;
    mutable std::mutex mu_;
    mutable std::condition_variable cv_;
    std::map<std::string, Entry> jobs_;
    std::vector<std::string> order_;
    std::deque<std::string> queue_;
    std::size_t next_id_ = 1;
    bool stopping_ = false;
    std::thread worker_;
};

struct Settings {
    taint::AnalysisConfig analysis;
    std::optional<std::vector<Label>> cwe_filter;
    ml::ModelConfig model;
};

nlohmann::ordered_json to_json(const Settings& s);
/// Throws FormatError with a JSON-pointer path.
Settings settings_from_json(const nlohmann::json& j);

struct ServiceOptions {
    std::filesystem::path project_root;
    std::filesystem::path dataset_path; ///< edited in place by PATCH and detection
    std::filesystem::path output_dir;
    std::optional<std::filesystem::path> model_path;
    std::optional<std::filesystem::path> settings_path; ///< default: <project>/.srm-forge/settings.json
};

/// Backing state for the HTTP API. Reads run concurrently; dataset edits and jobs share one writer lock.
class Service {
public:
    explicit Service(ServiceOptions opts);
    ~Service();

    void mount(httplib::Server& server);

    JobManager& jobs() { return *jobs_; }
    dataset::Dataset dataset_snapshot() const;
    bool settings_exist() const;
    Settings settings() const;
    const ServiceOptions& options() const noexcept { return opts_; }

private:
    std::string run_job(const Job& job, const JobManager::ProgressFn& progress, const std::atomic<bool>& cancelled);
    void store_dataset(dataset::Dataset d);
    void store_findings(std::vector<taint::Finding> findings, std::string sarif);
    Settings effective_settings(const nlohmann::json& overrides) const;
    std::filesystem::path settings_file() const;

    ServiceOptions opts_;
    mutable std::shared_mutex data_mu_;
    std::mutex writer_mu_;
    mutable std::mutex settings_mu_;
    dataset::Dataset dataset_;
    std::optional<std::filesystem::path> model_path_;
    std::vector<taint::Finding> findings_;
    std::optional<std::string> sarif_;
    std::unique_ptr<JobManager> jobs_;
};

} // namespace srmforge::service
