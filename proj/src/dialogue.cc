#include "reconcile/dialogue.h"

#include "reconcile/error.h"
#include "reconcile/foil.h"
#include "reconcile/model_space.h"
#include "reconcile/pddl.h"
#include "reconcile/payload.h"

#include <algorithm>
#include <condition_variable>
#include <fstream>
#include <set>
#include <variant>

namespace reconcile {

using json = nlohmann::json;

struct Session {
    struct ConflictPending {
        std::vector<ConflictSet> sets;
        std::size_t cursor = 0;
        std::vector<std::size_t> removed;
    };
    struct PlausiblePending {
        std::vector<PlausibleSet> sets;
    };
    struct SuboptimalPending {
        ProjectedPlan completion;
    };
    using Pending = std::variant<std::monostate, ConflictPending, PlausiblePending, SuboptimalPending>;

    enum class ExplanationState { Proposed, Accepted, Superseded };
    struct Explanation {
        int id = 0;
        std::string kind;
        EditSet edits;
        ExplanationState state = ExplanationState::Proposed;
    };

    std::string id;
    std::mutex mutex;  // one turn at a time

    std::mutex job_mutex;
    std::optional<std::stop_source> running;

    Model robot;
    Model human;
    Plan plan;
    std::vector<Foil> history;
    std::vector<Foil> live;  // foils refuted by the planner, kept for E^con
    std::optional<Foil> active;
    std::string active_status;
    Pending pending;
    std::vector<Explanation> log;
    int next_explanation = 1;
    std::shared_ptr<SubsequenceOracle> oracle;
    json entries = json::array();
};

struct Job {
    std::string id;
    std::stop_source stop;
    std::mutex mutex;
    std::condition_variable cv;
    bool done = false;
    Reply reply;
};

namespace {

int status_for(const std::string &code) {
    static const std::set<std::string> not_found{"UnknownSession", "UnknownJob"};
    static const std::set<std::string> conflict{"NoPendingFoil", "NoPendingExplanation",
                                                "StaleVeto", "StaleExplanation", "Cancelled"};
    static const std::set<std::string> unprocessable{
        "UnsolvableProblem", "UnsolvableAfterVeto", "InfeasibleSelection", "NoExplanation",
        "FoilFeasibleInRobot", "EmptySetConflict", "BaseUnsolvable", "FoilInfeasible"};
    if (not_found.count(code))
        return 404;
    if (conflict.count(code))
        return 409;
    if (unprocessable.count(code))
        return 422;
    if (code == "ResourceLimit")
        return 503;
    return 400;
}

Reply error_reply(const std::string &code, const std::string &message) {
    return {status_for(code), {{"error", {{"code", code}, {"message", message}}}}};
}

const char *pending_name(const Session::Pending &p) {
    switch (p.index()) {
    case 1: return "conflict_resolution";
    case 2: return "plausible_choice";
    case 3: return "suboptimal_decision";
    default: return "none";
    }
}

Plan solve_or_throw(const Model &model, const SearchLimits &limits, const char *unsolvable_code) {
    SearchResult r = solve_optimal(model, limits);
    if (r.outcome == SearchOutcome::ResourceLimit)
        throw Error("ResourceLimit", "planner stopped: " + r.limit_reason);
    if (r.outcome == SearchOutcome::Unsolvable)
        throw Error(unsolvable_code, "the planner's model has no plan for the goal");
    return r.plan;
}

std::size_t difference_size(const Session &s) {
    return model_difference(s.human, s.robot).size();
}

std::vector<std::string> action_names(const Model &m) {
    std::vector<std::string> out;
    for (const GroundAction &a : m.actions())
        out.push_back(a.name);
    return out;
}

ModelPair load_models(const json &request, const ServiceOptions &options) {
    if (request.contains("manifest"))
        return load_manifest(options.base_dir / request.at("manifest").get<std::string>());
    if (!request.contains("robot_domain") || !request.contains("robot_problem"))
        throw Error("BadRequest", "create needs \"manifest\" or inline robot_domain/robot_problem");
    auto text = [&](const char *key, const char *fallback) {
        return request.value(key, request.at(fallback).get<std::string>());
    };
    Model robot = parse_domain_problem(text("robot_domain", "robot_domain"),
                                       text("robot_problem", "robot_problem"), {});
    ParseOptions human_opts;
    human_opts.tag = ModelTag::Human;
    Model human = parse_domain_problem(text("human_domain", "robot_domain"),
                                       text("human_problem", "robot_problem"), human_opts);
    return align_models(robot, human);
}

Session::Explanation *latest_proposed(Session &s) {
    if (s.log.empty() || s.log.back().state != Session::ExplanationState::Proposed)
        return nullptr;
    return &s.log.back();
}

// Checks an optional {"explanation": id} against the newest explanation.
Session::Explanation &target_explanation(Session &s, const json &request, const char *stale_code) {
    Session::Explanation *latest = latest_proposed(s);
    if (request.contains("explanation")) {
        int wanted = request.at("explanation").get<int>();
        bool known = std::any_of(s.log.begin(), s.log.end(),
                                 [&](const auto &e) { return e.id == wanted; });
        if (!known)
            throw Error("NoPendingExplanation", "no explanation " + std::to_string(wanted));
        if (!latest || latest->id != wanted)
            throw Error(stale_code, "explanation " + std::to_string(wanted) +
                                        " is not the most recent open explanation");
    }
    if (!latest)
        throw Error("NoPendingExplanation", "no explanation is awaiting a decision");
    return *latest;
}

const Foil &active_foil(const Session &s) {
    if (!s.active)
        throw Error("NoPendingFoil", "submit a foil first");
    return *s.active;
}

SubsequenceOracle &oracle_for(Session &s, const ServiceOptions &options) {
    if (!s.oracle)
        s.oracle = std::make_shared<SubsequenceOracle>(s.robot, *s.active, options.foil_cap);
    return *s.oracle;
}

void skip_resolved(Session::ConflictPending &p) {
    auto hit = [&](const ConflictSet &c) {
        return std::any_of(c.indices.begin(), c.indices.end(), [&](std::size_t i) {
            return std::find(p.removed.begin(), p.removed.end(), i) != p.removed.end();
        });
    };
    while (p.cursor < p.sets.size() && hit(p.sets[p.cursor]))
        ++p.cursor;
}

json conflict_prompt(const Session::ConflictPending &p) {
    return {{"kind", "conflict"},
            {"number", p.cursor + 1},
            {"total", p.sets.size()},
            {"set", conflict_json(p.sets[p.cursor])}};
}

json op_plan(Session &s) {
    return {{"plan", plan_json(s.plan)},
            {"status", to_string(validate_goal(s.robot, s.plan.steps).status)}};
}

json op_foil(Session &s, const json &request, const SearchLimits &limits,
             const ServiceOptions &options) {
    Foil foil{request.at("foil").get<std::vector<std::string>>()};
    if (foil.empty())
        throw Error("InvalidArgument", "a foil needs at least one action");
    for (const std::string &name : foil.observations)
        s.robot.action_index(name);
    if (foil.size() > options.foil_cap)
        throw Error("FoilTooLarge", "foil has " + std::to_string(foil.size()) +
                                        " actions; the limit is " +
                                        std::to_string(options.foil_cap));

    json out{{"foil", foil.observations}};
    Session::Pending pending;
    std::optional<Plan> new_plan;
    std::string status;
    if (!foil_feasible(s.robot, foil, limits)) {
        status = "INFEASIBLE";
        out["options"] = {"explain", "closest_plan", "conflict_sets", "plausible_sets"};
        out["message"] = "The foil cannot be part of any valid plan.";
    } else {
        SuboptimalityReport report = suboptimality_report(s.robot, foil, limits);
        if (report.delta == Rational(0)) {
            status = "FEASIBLE_OPTIMAL";
            new_plan = report.completion.plan;
            out["plan"] = plan_json(*new_plan);
        } else {
            status = "FEASIBLE_SUBOPTIMAL";
            out["options"] = {"enforce", "explain_optimality"};
            out["report"] = {{"best_completion_cost", format_rational(report.best_completion_cost)},
                             {"optimal_cost", format_rational(report.optimal_cost)},
                             {"delta", format_rational(report.delta)},
                             {"completion", projected_json(report.completion, foil)}};
            out["message"] = "The foil is feasible but costs " + format_rational(report.delta) +
                             " more than an optimal plan.";
            pending = Session::SuboptimalPending{std::move(report.completion)};
        }
    }
    out["status"] = status;

    s.history.push_back(foil);
    auto same = [&](const Foil &f) { return f.observations == foil.observations; };
    if (status == "INFEASIBLE" && std::none_of(s.live.begin(), s.live.end(), same))
        s.live.push_back(foil);
    s.active = foil;
    s.active_status = status;
    s.pending = std::move(pending);
    s.oracle.reset();
    if (new_plan)
        s.plan = *new_plan;
    return out;
}

json op_explain(Session &s, const SearchLimits &limits) {
    active_foil(s);
    ExplanationResult result;
    std::string kind;
    if (s.active_status == "INFEASIBLE") {
        kind = "contrastive";
        result = contrastive_search(s.robot, s.human, s.live, limits);
    } else {
        kind = "optimality";
        Plan optimal = solve_or_throw(s.robot, limits, "UnsolvableProblem");
        result = mce_search(s.robot, s.human, optimal, limits);
    }
    if (Session::Explanation *open = latest_proposed(s))
        open->state = Session::ExplanationState::Superseded;
    Session::Explanation e{s.next_explanation++, kind, result.edits,
                           Session::ExplanationState::Proposed};
    s.log.push_back(e);
    return {{"explanation", e.id},
            {"kind", kind},
            {"edits", edits_json(e.edits)},
            {"size", e.edits.size()},
            {"goal_tests", result.goal_tests},
            {"foils", kind == "contrastive" ? s.live.size() : 0}};
}

json op_accept(Session &s, const json &request) {
    Session::Explanation &e = target_explanation(s, request, "StaleExplanation");
    Model updated = apply_edits(s.human, s.robot, e.edits);
    s.human = std::move(updated);
    e.state = Session::ExplanationState::Accepted;
    return {{"accepted", e.id}, {"edits", edits_json(e.edits)},
            {"model_difference", difference_size(s)}};
}

json op_veto(Session &s, const json &request, const SearchLimits &limits) {
    Session::Explanation &e = target_explanation(s, request, "StaleVeto");
    Model updated = apply_edits(s.robot, s.human, invert_edits(s.human, s.robot, e.edits));
    Plan plan = solve_or_throw(updated, limits, "UnsolvableAfterVeto");
    std::vector<Foil> live;
    for (const Foil &f : s.live)
        if (!foil_feasible(updated, f, limits))
            live.push_back(f);

    int id = e.id;
    EditSet edits = e.edits;
    s.log.pop_back();
    s.robot = std::move(updated);
    s.plan = std::move(plan);
    s.live = std::move(live);
    s.active.reset();
    s.active_status.clear();
    s.pending = {};
    s.oracle.reset();
    return {{"vetoed", id},
            {"edits", edits_json(edits)},
            {"plan", plan_json(s.plan)},
            {"model_difference", difference_size(s)},
            {"live_foils", s.live.size()}};
}

std::string strategy_of(const json &request) {
    std::string v = request.value("strategy", std::string());
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "closest" || v == "closest_plan")
        return "closest";
    if (v == "conflicts" || v == "conflict_sets")
        return "conflicts";
    if (v == "plausible" || v == "plausible_sets")
        return "plausible";
    throw Error("InvalidArgument", "strategy must be closest, conflicts or plausible");
}

json op_refine(Session &s, const json &request, const SearchLimits &limits,
               const ServiceOptions &options) {
    std::string strategy = strategy_of(request);
    const Foil &foil = active_foil(s);
    json out{{"strategy", strategy}};
    if (strategy == "closest") {
        ProjectedPlan pp = closest_plan(s.robot, foil, limits);
        out["plan"] = projected_json(pp, foil);
        s.plan = pp.plan;
        s.pending = {};
        return out;
    }
    SubsequenceOracle &oracle = oracle_for(s, options);
    if (strategy == "conflicts") {
        Session::ConflictPending p;
        p.sets = conflict_sets(oracle, limits);
        out["total"] = p.sets.size();
        out["solvability_checks"] = oracle.planner_calls();
        if (p.sets.empty()) {
            std::vector<std::size_t> all(foil.size());
            for (std::size_t i = 0; i < all.size(); ++i)
                all[i] = i;
            ProjectedPlan pp = resolve_and_plan(s.robot, foil, all, limits);
            out["done"] = true;
            out["plan"] = projected_json(pp, foil);
            s.plan = pp.plan;
            s.pending = {};
            return out;
        }
        out["prompt"] = conflict_prompt(p);
        s.pending = std::move(p);
        return out;
    }
    Session::PlausiblePending p;
    p.sets = plausible_sets(oracle, limits);
    json sets = json::array();
    for (const PlausibleSet &set : p.sets)
        sets.push_back(subset_json(set));
    out["sets"] = sets;
    out["solvability_checks"] = oracle.planner_calls();
    s.pending = std::move(p);
    return out;
}

std::size_t removal_target(const ConflictSet &set, const json &answer) {
    if (answer.is_number_integer()) {
        auto i = answer.get<std::int64_t>();
        for (std::size_t idx : set.indices)
            if (static_cast<std::int64_t>(idx) == i)
                return idx;
    } else if (answer.is_string()) {
        auto name = answer.get<std::string>();
        for (std::size_t k = 0; k < set.indices.size(); ++k)
            if (set.actions[k] == name)
                return set.indices[k];
    }
    throw Error("InvalidChoice", "remove must name an action of the presented conflict set");
}

json op_respond(Session &s, const json &request, const SearchLimits &limits) {
    json out;
    if (auto *p = std::get_if<Session::ConflictPending>(&s.pending)) {
        if (!request.contains("remove"))
            throw Error("InvalidChoice", "a conflict set is pending; answer with {\"remove\": action}");
        const Foil &foil = active_foil(s);
        Session::ConflictPending next = *p;
        std::size_t victim = removal_target(next.sets[next.cursor], request.at("remove"));
        next.removed.push_back(victim);
        skip_resolved(next);
        out["removed"] = {{"index", victim}, {"action", foil.observations[victim]}};
        if (next.cursor < next.sets.size()) {
            out["prompt"] = conflict_prompt(next);
            s.pending = std::move(next);
            return out;
        }
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < foil.size(); ++i)
            if (std::find(next.removed.begin(), next.removed.end(), i) == next.removed.end())
                kept.push_back(i);
        ProjectedPlan pp = resolve_and_plan(s.robot, foil, kept, limits);
        out["done"] = true;
        out["kept"] = kept;
        out["plan"] = projected_json(pp, foil);
        s.plan = pp.plan;
        s.pending = {};
        return out;
    }
    if (auto *p = std::get_if<Session::PlausiblePending>(&s.pending)) {
        const json &choice = request.value("choice", json());
        if (!choice.is_number_integer() || choice.get<std::int64_t>() < 0 ||
            choice.get<std::size_t>() >= p->sets.size())
            throw Error("InvalidChoice", "choice must index one of the presented plausible sets");
        const Foil &foil = active_foil(s);
        const PlausibleSet &set = p->sets[choice.get<std::size_t>()];
        ProjectedPlan pp = resolve_and_plan(s.robot, foil, set.indices, limits);
        out["chosen"] = choice;
        out["kept"] = set.indices;
        out["plan"] = projected_json(pp, foil);
        s.plan = pp.plan;
        s.pending = {};
        return out;
    }
    if (auto *p = std::get_if<Session::SuboptimalPending>(&s.pending)) {
        if (request.value("choice", json()) != "enforce")
            throw Error("InvalidChoice", "a suboptimal foil is pending; answer with "
                                         "{\"choice\": \"enforce\"} or ask for an explanation");
        out["enforced"] = true;
        out["plan"] = projected_json(p->completion, active_foil(s));
        s.plan = p->completion.plan;
        s.pending = {};
        return out;
    }
    throw Error("InvalidChoice", "nothing is pending");
}

}  // namespace

DialogueService::DialogueService(ServiceOptions options) : options_(std::move(options)) {}

DialogueService::~DialogueService() {
    std::vector<std::pair<std::shared_ptr<Job>, std::thread>> workers;
    {
        std::lock_guard lock(mutex_);
        for (auto &[id, job] : jobs_)
            job->stop.request_stop();
        workers = std::move(workers_);
    }
    for (auto &w : workers)
        w.second.join();
}

std::shared_ptr<Session> DialogueService::find(const std::string &id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end())
        throw Error("UnknownSession", "no session " + id);
    return it->second;
}

Reply DialogueService::call(const std::string &op, const std::string &session,
                            const json &request) {
    return run(op, session, request, {});
}

Reply DialogueService::run(const std::string &op, const std::string &session_id,
                           const json &request, std::stop_token stop) {
    SearchLimits limits = options_.limits;
    limits.stop = stop;
    auto fail = [&](const Error &e) {
        if (e.code() == "ResourceLimit" && stop.stop_requested())
            return error_reply("Cancelled", "the operation was cancelled");
        return error_reply(e.code(), e.what());
    };

    if (op == "create") {
        try {
            if (!request.is_object())
                throw Error("BadRequest", "request body must be a JSON object");
            ModelPair models = load_models(request, options_);
            Plan plan = solve_or_throw(models.robot, limits, "UnsolvableProblem");
            auto s = std::make_shared<Session>();
            s->robot = std::move(models.robot);
            s->human = std::move(models.human);
            s->plan = std::move(plan);
            {
                std::lock_guard lock(mutex_);
                s->id = session_id.empty() ? "s" + std::to_string(next_session_++) : session_id;
                if (sessions_.count(s->id))
                    throw Error("InvalidArgument", "session " + s->id + " already exists");
                sessions_[s->id] = s;
            }
            std::lock_guard lock(s->mutex);
            json body{{"session", s->id},
                      {"plan", plan_json(s->plan)},
                      {"actions", action_names(s->robot)},
                      {"metadata", models.manifest.metadata},
                      {"model_difference", difference_size(*s)},
                      {"pending", "none"}};
            s->entries.push_back(
                {{"op", op}, {"request", request}, {"status", 200}, {"response", body}});
            persist(*s);
            return {200, body};
        } catch (const Error &e) {
            return fail(e);
        } catch (const json::exception &e) {
            return error_reply("BadRequest", e.what());
        }
    }

    std::shared_ptr<Session> s;
    try {
        s = find(session_id);
    } catch (const Error &e) {
        return fail(e);
    }

    if (op == "cancel" || op == "close") {
        std::lock_guard lock(s->job_mutex);
        if (s->running)
            s->running->request_stop();
    }
    if (op == "close") {
        std::lock_guard lock(s->mutex);
        std::lock_guard service_lock(mutex_);
        sessions_.erase(s->id);
        return {200, {{"closed", s->id}}};
    }

    std::lock_guard lock(s->mutex);
    if (op == "transcript")
        return {200, {{"session", s->id}, {"entries", s->entries}}};

    Reply reply;
    try {
        if (!request.is_object())
            throw Error("BadRequest", "request body must be a JSON object");
        json body;
        if (op == "plan")
            body = op_plan(*s);
        else if (op == "foil")
            body = op_foil(*s, request, limits, options_);
        else if (op == "explain")
            body = op_explain(*s, limits);
        else if (op == "accept")
            body = op_accept(*s, request);
        else if (op == "veto")
            body = op_veto(*s, request, limits);
        else if (op == "refine")
            body = op_refine(*s, request, limits, options_);
        else if (op == "respond")
            body = op_respond(*s, request, limits);
        else if (op == "cancel")
            s->pending = {};
        else
            throw Error("UnknownOperation", "unknown operation " + op);
        body["pending"] = pending_name(s->pending);
        reply = {200, std::move(body)};
    } catch (const Error &e) {
        reply = fail(e);
    } catch (const json::exception &e) {
        reply = error_reply("BadRequest", e.what());
    }

    // A cancelled turn changed nothing; leaving it out keeps the log replayable.
    bool cancelled = reply.status != 200 && reply.body["error"]["code"] == "Cancelled";
    if (!cancelled) {
        s->entries.push_back(
            {{"op", op}, {"request", request}, {"status", reply.status}, {"response", reply.body}});
        persist(*s);
    }
    return reply;
}

Reply DialogueService::submit(const std::string &op, const std::string &session,
                              const json &request) {
    if (op == "plan" || op == "transcript" || op == "cancel" || op == "close")
        return call(op, session, request);

    std::shared_ptr<Session> s;
    if (op != "create") {
        try {
            s = find(session);
        } catch (const Error &e) {
            return error_reply(e.code(), e.what());
        }
    }

    auto job = std::make_shared<Job>();
    if (s) {
        std::lock_guard lock(s->job_mutex);
        s->running = job->stop;
    }
    {
        std::lock_guard lock(mutex_);
        reap_jobs();
        job->id = "j" + std::to_string(next_job_++);
        jobs_[job->id] = job;
        workers_.emplace_back(job, std::thread([this, job, op, session, request] {
            Reply r = run(op, session, request, job->stop.get_token());
            {
                std::lock_guard lock(job->mutex);
                job->reply = std::move(r);
                job->done = true;
            }
            job->cv.notify_all();
        }));
    }

    std::unique_lock lock(job->mutex);
    if (job->cv.wait_for(lock, options_.job_wait, [&] { return job->done; }))
        return job->reply;
    return {202, {{"job", job->id}, {"state", "running"}}};
}

Reply DialogueService::job(const std::string &id) {
    std::shared_ptr<Job> job;
    {
        std::lock_guard lock(mutex_);
        auto it = jobs_.find(id);
        if (it == jobs_.end())
            return error_reply("UnknownJob", "no job " + id);
        job = it->second;
    }
    std::lock_guard lock(job->mutex);
    if (!job->done)
        return {200, {{"job", id}, {"state", "running"}}};
    return {200, {{"job", id}, {"state", "done"}, {"status", job->reply.status},
                  {"result", job->reply.body}}};
}

void DialogueService::reap_jobs() {
    // Finished threads are joined here; their replies stay pollable.
    auto finished = [](auto &w) {
        std::lock_guard lock(w.first->mutex);
        return w.first->done;
    };
    for (auto it = workers_.begin(); it != workers_.end();) {
        if (finished(*it)) {
            it->second.join();
            it = workers_.erase(it);
        } else {
            ++it;
        }
    }
}

void DialogueService::persist(const Session &s) {
    if (!options_.snapshot_dir)
        return;
    std::filesystem::create_directories(*options_.snapshot_dir);
    auto path = *options_.snapshot_dir / (s.id + ".json");
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << json{{"session", s.id}, {"entries", s.entries}}.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

std::size_t DialogueService::restore_snapshots() {
    if (!options_.snapshot_dir || !std::filesystem::exists(*options_.snapshot_dir))
        return 0;
    std::vector<std::filesystem::path> files;
    for (const auto &entry : std::filesystem::directory_iterator(*options_.snapshot_dir))
        if (entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    // Replaying would rewrite the snapshot files with the same content.
    auto dir = options_.snapshot_dir;
    options_.snapshot_dir.reset();
    std::size_t restored = 0;
    for (const auto &file : files) {
        json snap = json::parse(read_file(file));
        std::string id = snap.at("session");
        for (const json &entry : snap.at("entries"))
            call(entry.at("op"), id, entry.at("request"));
        if (id.size() > 1 && id[0] == 's' &&
            std::all_of(id.begin() + 1, id.end(), [](char c) { return std::isdigit(c); })) {
            std::lock_guard lock(mutex_);
            next_session_ = std::max<std::size_t>(next_session_, std::stoul(id.substr(1)) + 1);
        }
        ++restored;
    }
    options_.snapshot_dir = dir;
    return restored;
}

ReplayResult replay_transcript(const json &transcript, ServiceOptions options) {
    options.snapshot_dir.reset();
    DialogueService service(std::move(options));
    ReplayResult result;
    std::string id = transcript.at("session");
    std::size_t n = 0;
    for (const json &entry : transcript.at("entries")) {
        ++n;
        Reply r = service.call(entry.at("op"), id, entry.at("request"));
        std::string expected =
            json{{"status", entry.at("status")}, {"response", entry.at("response")}}.dump();
        std::string actual = json{{"status", r.status}, {"response", r.body}}.dump();
        if (expected != actual)
            result.differences.push_back("entry " + std::to_string(n) + " (" +
                                         entry.at("op").get<std::string>() + ")\n- " + expected +
                                         "\n+ " + actual);
    }
    result.entries = n;
    return result;
}

}  // namespace reconcile
