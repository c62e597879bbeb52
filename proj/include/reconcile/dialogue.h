#pragma once

#include "reconcile/planner.h"
#include "reconcile/subsets.h"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace reconcile {

struct ServiceOptions {
    // Budgets for every planner call; the stop token is supplied per job.
    SearchLimits limits;
    // How long a request waits for its job before answering 202.
    std::chrono::milliseconds job_wait{2000};
    // Manifest paths in create requests resolve against this directory.
    std::filesystem::path base_dir = ".";
    // When set, each session's transcript is written here after every turn.
    std::optional<std::filesystem::path> snapshot_dir;
    std::size_t foil_cap = kDefaultFoilCap;
};

struct Reply {
    int status = 200;
    nlohmann::json body;
};

struct Session;
struct Job;

// Sessions of the explanatory dialogue. Operations take and return JSON
// payloads (schemata in README.md). Operations on one session are
// serialized; distinct sessions run concurrently.
//
// Ops: create, plan, foil, explain, accept, veto, refine, respond, cancel,
// transcript, close.
class DialogueService {
public:
    explicit DialogueService(ServiceOptions options = {});
    ~DialogueService();

    DialogueService(const DialogueService &) = delete;
    DialogueService &operator=(const DialogueService &) = delete;

    // Runs the operation to completion on the calling thread. For "create"
    // a non-empty session argument forces that id (used by replay).
    Reply call(const std::string &op, const std::string &session,
               const nlohmann::json &request = nlohmann::json::object());

    // Runs the operation as a cancellable job. Answers with the job's reply
    // if it finishes within job_wait, else 202 with {"job": id}.
    Reply submit(const std::string &op, const std::string &session,
                 const nlohmann::json &request = nlohmann::json::object());

    // {"job", "state": running|done, "status"?, "result"?}
    Reply job(const std::string &id);

    // Replays every snapshot in snapshot_dir into fresh sessions.
    std::size_t restore_snapshots();

    const ServiceOptions &options() const { return options_; }

private:
    std::shared_ptr<Session> find(const std::string &id);
    Reply run(const std::string &op, const std::string &session, const nlohmann::json &request,
              std::stop_token stop);
    void persist(const Session &s);
    void reap_jobs();

    ServiceOptions options_;
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::map<std::string, std::shared_ptr<Job>> jobs_;
    std::vector<std::pair<std::shared_ptr<Job>, std::thread>> workers_;
    std::size_t next_session_ = 1;
    std::size_t next_job_ = 1;
};

struct ReplayResult {
    std::size_t entries = 0;
    std::vector<std::string> differences;

    bool identical() const { return differences.empty(); }
};

// Feeds a transcript ({"session", "entries": [{op, request, status,
// response}]}) through a fresh service and compares every serialized reply
// byte for byte.
ReplayResult replay_transcript(const nlohmann::json &transcript, ServiceOptions options);

}  // namespace reconcile
