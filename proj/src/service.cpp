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

#include "srmforge/service.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "httplib.h"
#include "srmforge/pipeline.hpp"
#include "srmforge/program_model.hpp"
#include "srmforge/sarif.hpp"
#include "srmforge/signature.hpp"
#include "srmforge/spec.hpp"

namespace srmforge::service {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(JobKind k) {
    switch (k) {
    case JobKind::detect: return "detect";
    case JobKind::train: return "train";
    case JobKind::pipeline: return "pipeline";
    case JobKind::analyze: return "analyze";
    }
    return "?";
}

std::string_view to_string(JobStatus s) {
    switch (s) {
    case JobStatus::queued: return "queued";
    case JobStatus::running: return "running";
    case JobStatus::done: return "done";
    case JobStatus::failed: return "failed";
    }
    return "?";
}

std::optional<JobKind> parse_job_kind(std::string_view s) {
    for (auto k : {JobKind::detect, JobKind::train, JobKind::pipeline, JobKind::analyze})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

ordered_json to_json(const Job& j) {
    ordered_json o;
    o["id"] = j.id;
    o["kind"] = to_string(j.kind);
    o["status"] = to_string(j.status);
    o["progress"] = j.progress;
    o["resultRef"] = j.result_ref ? json(*j.result_ref) : json(nullptr);
    o["error"] = j.error ? json(*j.error) : json(nullptr);
    o["config"] = j.config;
    return o;
}

bool is_mutating(JobKind k) { return k != JobKind::analyze; }

// ---- jobs ---------------------------------------------------------------

JobManager::JobManager(Work work) : work_(std::move(work)) { worker_ = std::thread([this] { loop(); }); }

JobManager::~JobManager() {
    {
        std::lock_guard lock(mu_);
        stopping_ = true;
        for (auto& [id, e] : jobs_) {
            e.cancelled->store(true);
            if (e.job.status == JobStatus::queued) {
                e.job.error = "cancelled";
                set_status(e, JobStatus::failed);
            }
        }
        queue_.clear();
    }
    cv_.notify_all();
    worker_.join();
}

void JobManager::set_status(Entry& e, JobStatus s) {
    e.job.status = s;
    e.history.push_back(s);
}

const JobManager::Entry& JobManager::entry(const std::string& id) const {
    auto it = jobs_.find(id);
    if (it == jobs_.end()) throw NotFound("no job with id " + id);
    return it->second;
}

Job JobManager::submit(JobKind kind, json config) {
    std::lock_guard lock(mu_);
    if (stopping_) throw Error("job manager is shutting down");
    if (is_mutating(kind)) {
        for (const auto& [id, e] : jobs_) {
            bool active = e.job.status == JobStatus::queued || e.job.status == JobStatus::running;
            if (active && is_mutating(e.job.kind))
                throw ConflictError("a " + std::string(to_string(e.job.kind)) + " job is already active (" + id + ")");
        }
    }
    Entry e;
    e.job.id = "job-" + std::to_string(next_id_++);
    e.job.kind = kind;
    e.job.config = config.is_null() ? json::object() : std::move(config);
    set_status(e, JobStatus::queued);
    std::string id = e.job.id;
    jobs_.emplace(id, std::move(e));
    order_.push_back(id);
    queue_.push_back(id);
    cv_.notify_all();
    return jobs_.at(id).job;
}

std::optional<Job> JobManager::get(const std::string& id) const {
    std::lock_guard lock(mu_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return std::nullopt;
    return it->second.job;
}

std::vector<Job> JobManager::list() const {
    std::lock_guard lock(mu_);
    std::vector<Job> out;
    for (const auto& id : order_) out.push_back(jobs_.at(id).job);
    return out;
}

Job JobManager::cancel(const std::string& id) {
    std::lock_guard lock(mu_);
    auto& e = const_cast<Entry&>(entry(id));
    if (e.job.status == JobStatus::queued) {
        e.job.error = "cancelled";
        set_status(e, JobStatus::failed);
        queue_.erase(std::remove(queue_.begin(), queue_.end(), id), queue_.end());
        cv_.notify_all();
    } else if (e.job.status == JobStatus::running) {
        e.cancelled->store(true);
    }
    return e.job;
}

Job JobManager::wait(const std::string& id, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mu_);
    cv_.wait_for(lock, timeout, [&] {
        auto s = entry(id).job.status;
        return s == JobStatus::done || s == JobStatus::failed;
    });
    return entry(id).job;
}

std::vector<JobStatus> JobManager::transitions(const std::string& id) const {
    std::lock_guard lock(mu_);
    return entry(id).history;
}

void JobManager::loop() {
    std::unique_lock lock(mu_);
    while (true) {
        cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
        if (stopping_) return;
        std::string id = queue_.front();
        queue_.pop_front();
        auto& e = jobs_.at(id);
        set_status(e, JobStatus::running);
        Job snapshot = e.job;
        auto cancelled = e.cancelled;
        cv_.notify_all();
        lock.unlock();

        ProgressFn progress = [this, id](double f) {
            std::lock_guard g(mu_);
            auto& j = jobs_.at(id).job;
            j.progress = std::clamp(f, j.progress, 1.0);
            cv_.notify_all();
        };
        std::optional<std::string> result, error;
        try {
            result = work_(snapshot, progress, *cancelled);
            if (cancelled->load()) error = "cancelled";
        } catch (const pipeline::Cancelled&) {
            error = "cancelled";
        } catch (const std::exception& ex) {
            error = ex.what();
        }

        lock.lock();
        auto& done = jobs_.at(id);
        if (error) {
            done.job.error = error;
            set_status(done, JobStatus::failed);
        } else {
            done.job.result_ref = result;
            done.job.progress = 1.0;
            set_status(done, JobStatus::done);
        }
        cv_.notify_all();
    }
}

// ---- settings -----------------------------------------------------------

ordered_json to_json(const Settings& s) {
    ordered_json o;
    o["analysis"] = taint::to_json(s.analysis);
    if (s.cwe_filter) {
        auto a = json::array();
        for (Label l : *s.cwe_filter) a.push_back(std::string(label_id(l)));
        o["cwes"] = a;
    } else {
        o["cwes"] = nullptr;
    }
    o["modelConfig"] = ml::to_json(s.model);
    return o;
}

Settings settings_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("", "settings must be an object");
    for (const auto& [k, v] : j.items())
        if (k != "analysis" && k != "cwes" && k != "modelConfig") throw FormatError("/" + k, "unknown key");
    pipeline::PipelineConfig probe = pipeline::pipeline_config_from_json(j);
    Settings s;
    s.analysis = probe.analysis;
    s.cwe_filter = probe.cwe_filter;
    s.model = probe.model;
    if (s.analysis.max_call_depth < 0) throw FormatError("/analysis/maxCallDepth", "must be >= 0");
    try {
        s.model.validate();
    } catch (const Error& e) {
        throw FormatError("/modelConfig", e.what());
    }
    return s;
}

// ---- service ------------------------------------------------------------

Service::Service(ServiceOptions opts) : opts_(std::move(opts)) {
    if (!fs::is_directory(opts_.project_root))
        throw Error("project root is not a directory: " + opts_.project_root.string());
    dataset_ = dataset::load_dataset_file(opts_.dataset_path.string());
    model_path_ = opts_.model_path;
    fs::create_directories(opts_.output_dir);
    jobs_ = std::make_unique<JobManager>(
        [this](const Job& j, const JobManager::ProgressFn& p, const std::atomic<bool>& c) { return run_job(j, p, c); });
}

Service::~Service() { jobs_.reset(); }

dataset::Dataset Service::dataset_snapshot() const {
    std::shared_lock lock(data_mu_);
    return dataset_;
}

fs::path Service::settings_file() const {
    return opts_.settings_path ? *opts_.settings_path : opts_.project_root / ".srm-forge" / "settings.json";
}

bool Service::settings_exist() const {
    std::lock_guard lock(settings_mu_);
    return fs::is_regular_file(settings_file());
}

Settings Service::settings() const {
    std::lock_guard lock(settings_mu_);
    if (!fs::is_regular_file(settings_file())) return {};
    return settings_from_json(json::parse(pipeline::read_text_file(settings_file())));
}

Settings Service::effective_settings(const json& overrides) const {
    json base = to_json(settings());
    if (overrides.is_object() && !overrides.empty()) base.merge_patch(overrides);
    return settings_from_json(base);
}

void Service::store_dataset(dataset::Dataset d) {
    pipeline::write_file_atomic(opts_.dataset_path, dataset::save_dataset(d));
    std::unique_lock lock(data_mu_);
    dataset_ = std::move(d);
}

void Service::store_findings(std::vector<taint::Finding> findings, std::string sarif) {
    std::unique_lock lock(data_mu_);
    findings_ = std::move(findings);
    sarif_ = std::move(sarif);
}

std::string Service::run_job(const Job& job, const JobManager::ProgressFn& progress,
                             const std::atomic<bool>& cancelled) {
    std::lock_guard writer(writer_mu_);
    auto check = [&] {
        if (cancelled.load()) throw pipeline::Cancelled();
    };
    check();
    Settings s = effective_settings(job.config);
    auto snapshot = dataset_snapshot();

    auto load_or_train = [&](const program::ProgramModel& project) {
        if (model_path_) return ml::load_model(pipeline::read_text_file(*model_path_));
        return pipeline::train_with_fallback(pipeline::training_matrix(snapshot, &project), s.model).model;
    };

    switch (job.kind) {
    case JobKind::pipeline: {
        pipeline::PipelineConfig cfg;
        cfg.project_root = opts_.project_root;
        cfg.dataset_path = opts_.dataset_path;
        cfg.model_path = model_path_;
        cfg.cwe_filter = s.cwe_filter;
        cfg.analysis = s.analysis;
        cfg.model = s.model;
        cfg.output_dir = opts_.output_dir;
        auto result = pipeline::run_pipeline(cfg, [&](std::string_view, double f) {
            check();
            progress(f);
        });
        store_dataset(result.dataset);
        store_findings(result.findings, pipeline::read_text_file(result.sarif_path));
        return result.sarif_path.string();
    }
    case JobKind::detect: {
        auto project = program::index_program(program::load_project(opts_.project_root)).program;
        progress(0.3);
        check();
        auto model = load_or_train(project);
        progress(0.7);
        check();
        store_dataset(dataset::merge_detected(snapshot, pipeline::detect_methods(project, model)));
        return opts_.dataset_path.string();
    }
    case JobKind::train: {
        auto project = program::index_program(program::load_project(opts_.project_root)).program;
        check();
        auto trained = pipeline::train_with_fallback(pipeline::training_matrix(snapshot, &project), s.model);
        check();
        auto path = opts_.output_dir / "model.json";
        pipeline::write_file_atomic(path, ml::save_model(trained.model));
        model_path_ = path;
        return path.string();
    }
    case JobKind::analyze: {
        auto project = program::index_program(program::load_project(opts_.project_root)).program;
        check();
        auto specs = spec::generate_specs(snapshot, s.cwe_filter).specs;
        auto findings = taint::analyze_program(project, specs, s.analysis);
        progress(0.8);
        check();
        auto sarif_text = sarif::emit_sarif(findings);
        pipeline::write_file_atomic(opts_.output_dir / "findings.json", taint::to_json(findings).dump(2) + "\n");
        pipeline::write_file_atomic(opts_.output_dir / "findings.sarif", sarif_text);
        store_findings(std::move(findings), std::move(sarif_text));
        return (opts_.output_dir / "findings.sarif").string();
    }
    }
    throw Error("unknown job kind");
}

// ---- HTTP ---------------------------------------------------------------

namespace {

void send_json(httplib::Response& res, int status, const ordered_json& body) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
}

void send_error(httplib::Response& res, int status, std::string code, std::string message, std::string path = "") {
    send_json(res, status, ordered_json{{"code", std::move(code)}, {"message", std::move(message)}, {"path", std::move(path)}});
}

json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    return json::parse(req.body);
}

ordered_json method_row(const dataset::MethodRecord& r) {
    auto row = dataset::to_json(r);
    auto sig = parse_signature(r.signature);
    row["class"] = sig ? sig->owner : "";
    return row;
}

template <typename F>
httplib::Server::Handler guarded(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
        try {
            f(req, res);
        } catch (const json::exception& e) {
            send_error(res, 400, "bad_request", std::string("malformed JSON: ") + e.what());
        } catch (const FormatError& e) {
            send_error(res, 400, "invalid", e.reason(), e.path());
        } catch (const NotFound& e) {
            send_error(res, 404, "not_found", e.what());
        } catch (const ConflictError& e) {
            send_error(res, 409, "conflict", e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, "internal", e.what());
        }
    };
}

} // namespace

void Service::mount(httplib::Server& server) {
    server.Get("/api/health", guarded([](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, {{"status", "ok"}});
    }));

    server.Get("/api/methods", guarded([this](const httplib::Request& req, httplib::Response& res) {
        std::optional<Label> label;
        std::optional<dataset::Discovery> discovery;
        if (req.has_param("label") && !req.get_param_value("label").empty()) {
            label = parse_label(req.get_param_value("label"));
            if (!label) throw FormatError("/label", "unknown label '" + req.get_param_value("label") + "'");
        }
        if (req.has_param("discovery") && !req.get_param_value("discovery").empty()) {
            discovery = dataset::parse_discovery(req.get_param_value("discovery"));
            if (!discovery) throw FormatError("/discovery", "unknown discovery '" + req.get_param_value("discovery") + "'");
        }
        std::string cls = req.has_param("class") ? req.get_param_value("class") : "";
        auto rows = ordered_json::array();
        for (const auto& r : dataset_snapshot().records) {
            if (label && !r.labels.has(*label)) continue;
            if (discovery && r.discovery != *discovery) continue;
            if (!cls.empty()) {
                auto sig = parse_signature(r.signature);
                if (!sig || (sig->owner != cls && sig->simple_owner() != cls)) continue;
            }
            rows.push_back(method_row(r));
        }
        send_json(res, 200, rows);
    }));

    server.Get(R"(/api/methods/(.+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto d = dataset_snapshot();
        const auto* r = d.find(req.matches[1].str());
        if (!r) throw NotFound("no record for " + req.matches[1].str());
        send_json(res, 200, method_row(*r));
    }));

    server.Patch(R"(/api/methods/(.+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const std::string sig = req.matches[1].str();
        json body = parse_body(req);
        if (!body.is_object()) throw FormatError("", "body must be an object");
        for (const auto& [k, v] : body.items())
            if (k != "labels" && k != "dataIn" && k != "dataOut" && k != "note")
                throw FormatError("/" + k, "field cannot be edited");
        std::lock_guard writer(writer_mu_);
        auto d = dataset_snapshot();
        json merged;
        if (const auto* r = d.find(sig)) {
            merged = dataset::to_json(*r);
        } else {
            merged = {{"signature", sig}, {"labels", json::array()}, {"dataIn", json::array()}, {"dataOut", "none"}};
        }
        for (const auto& [k, v] : body.items()) merged[k] = v;
        merged["signature"] = sig;
        merged["discovery"] = "manual";
        auto record = dataset::record_from_json(merged, "");
        auto updated = dataset::merge_records(d, {record});
        store_dataset(updated);
        send_json(res, 200, method_row(*updated.find(sig)));
    }));

    server.Post("/api/jobs", guarded([this](const httplib::Request& req, httplib::Response& res) {
        json body = parse_body(req);
        if (!body.is_object() || !body.contains("kind") || !body["kind"].is_string())
            throw FormatError("/kind", "job kind is required");
        auto kind = parse_job_kind(body["kind"].get<std::string>());
        if (!kind) throw FormatError("/kind", "unknown job kind '" + body["kind"].get<std::string>() + "'");
        json config = body.value("config", json::object());
        try {
            effective_settings(config);
        } catch (const FormatError& e) {
            throw FormatError("/config" + e.path(), e.reason());
        }
        send_json(res, 202, to_json(jobs_->submit(*kind, config)));
    }));

    server.Get("/api/jobs", guarded([this](const httplib::Request&, httplib::Response& res) {
        auto a = ordered_json::array();
        for (const auto& j : jobs_->list()) a.push_back(to_json(j));
        send_json(res, 200, a);
    }));

    server.Get(R"(/api/jobs/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto j = jobs_->get(req.matches[1].str());
        if (!j) throw NotFound("no job with id " + req.matches[1].str());
        send_json(res, 200, to_json(*j));
    }));

    server.Post(R"(/api/jobs/([^/]+)/cancel)", guarded([this](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, to_json(jobs_->cancel(req.matches[1].str())));
    }));

    server.Get("/api/findings", guarded([this](const httplib::Request&, httplib::Response& res) {
        std::shared_lock lock(data_mu_);
        send_json(res, 200, ordered_json{{"analyzed", sarif_.has_value()}, {"findings", taint::to_json(findings_)}});
    }));

    server.Get("/api/export/sarif", guarded([this](const httplib::Request&, httplib::Response& res) {
        std::shared_lock lock(data_mu_);
        if (!sarif_) throw NotFound("no analysis has run yet");
        res.set_header("Content-Disposition", "attachment; filename=\"findings.sarif\"");
        res.set_content(*sarif_, "application/sarif+json");
    }));

    server.Get("/api/settings", guarded([this](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, ordered_json{{"exists", settings_exist()}, {"settings", to_json(settings())}});
    }));

    server.Put("/api/settings", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto s = settings_from_json(parse_body(req));
        {
            std::lock_guard lock(settings_mu_);
            pipeline::write_file_atomic(settings_file(), to_json(s).dump(2) + "\n");
        }
        send_json(res, 200, ordered_json{{"exists", true}, {"settings", to_json(s)}});
    }));

    server.Get("/api/stats", guarded([this](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, dataset::to_json(dataset::dataset_stats(dataset_snapshot())));
    }));

    server.Get("/api/source", guarded([this](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("uri")) throw FormatError("/uri", "uri is required");
        const std::string uri = req.get_param_value("uri");
        auto files = program::load_project(opts_.project_root);
        auto it = std::find_if(files.begin(), files.end(), [&](const auto& f) { return f.uri == uri; });
        if (it == files.end()) throw NotFound("no project file " + uri);
        int n = static_cast<int>(it->line_count());
        auto num = [&](const char* key, int fallback) {
            if (!req.has_param(key)) return fallback;
            try {
                return std::stoi(req.get_param_value(key));
            } catch (const std::exception&) {
                throw FormatError(std::string("/") + key, "expected an integer");
            }
        };
        int start = std::max(1, num("start", 1));
        int end = std::min(n, num("end", n));
        auto lines = ordered_json::array();
        for (int l = start; l <= end; ++l) lines.push_back({{"line", l}, {"text", std::string(it->line(l))}});
        send_json(res, 200, ordered_json{{"uri", uri}, {"lineCount", n}, {"lines", lines}});
    }));
}

} // namespace srmforge::service
