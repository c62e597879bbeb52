#include "reconcile/dialogue.h"
#include "reconcile/error.h"
#include "reconcile/foil.h"
#include "reconcile/http_server.h"
#include "reconcile/model_space.h"
#include "reconcile/payload.h"
#include "reconcile/pddl.h"
#include "reconcile/subsets.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

using json = nlohmann::json;
using namespace reconcile;

namespace {

struct Common {
    std::string manifest;
    std::string domain;
    std::string problem;
    std::string format = "text";
    std::size_t node_budget = 10'000'000;
    double time_budget = 60.0;

    SearchLimits limits() const {
        SearchLimits l;
        l.max_generated = node_budget;
        l.time_budget = std::chrono::milliseconds(static_cast<long long>(time_budget * 1000));
        return l;
    }
    bool as_json() const { return format == "json"; }
};

struct Models {
    Model robot;
    Model human;
};

Models load(const Common &c) {
    if (!c.manifest.empty()) {
        ModelPair p = load_manifest(c.manifest);
        return {std::move(p.robot), std::move(p.human)};
    }
    if (c.domain.empty() || c.problem.empty())
        throw CLI::ValidationError("models", "give --manifest or both --domain and --problem");
    Model m = parse_domain_problem(read_file(c.domain), read_file(c.problem));
    return {m, m.with_tag(ModelTag::Human)};
}

Foil read_foil(const std::string &path) {
    return Foil{parse_action_list(read_file(path))};
}

void emit(const Common &c, const json &j, const std::string &text) {
    if (c.as_json())
        std::cout << j.dump(2) << '\n';
    else
        std::cout << text;
}

std::string projected_text(const ProjectedPlan &pp, const Foil &foil) {
    std::ostringstream out;
    for (std::size_t i = 0; i < pp.plan.steps.size(); ++i) {
        out << pp.plan.steps[i];
        if (pp.observation[i] >= 0)
            out << "  [foil #" << pp.observation[i] + 1 << "]";
        else
            out << "  [new]";
        out << '\n';
    }
    out << "; cost = " << format_rational(*pp.plan.cost) << '\n';
    for (std::size_t d : pp.discarded)
        out << "; discarded #" << d + 1 << ' ' << foil.observations[d] << '\n';
    return out.str();
}

template <typename Set>
std::string sets_text(const std::vector<Set> &sets) {
    std::ostringstream out;
    for (const Set &s : sets) {
        out << '{';
        for (std::size_t k = 0; k < s.indices.size(); ++k)
            out << (k ? ", " : "") << '#' << s.indices[k] + 1 << ' ' << s.actions[k];
        out << "}\n";
    }
    return out.str();
}

int cmd_plan(const Common &c) {
    Models m = load(c);
    SearchResult r = solve_optimal(m.robot, c.limits());
    if (r.outcome == SearchOutcome::ResourceLimit)
        throw Error("ResourceLimit", "planner stopped: " + r.limit_reason);
    if (r.outcome == SearchOutcome::Unsolvable)
        throw Error("UnsolvableProblem", "no plan reaches the goal");
    emit(c,
         {{"plan", plan_json(r.plan)},
          {"expanded", r.stats.expanded},
          {"generated", r.stats.generated}},
         format_plan(r.plan));
    return 0;
}

int cmd_validate(const Common &c, const std::string &plan_path) {
    Models m = load(c);
    auto steps = parse_action_list(read_file(plan_path));
    Validation v = validate_goal(m.robot, steps);
    json j{{"status", to_string(v.status)}};
    std::string text = std::string(to_string(v.status)) + "\n";
    if (v.status == PlanStatus::Infeasible) {
        j["failed_step"] = v.failed_step;
        text += "; step " + std::to_string(v.failed_step + 1) + " is not applicable\n";
    } else {
        j["cost"] = format_rational(v.cost);
        text += "; cost = " + format_rational(v.cost) + "\n";
    }
    emit(c, j, text);
    return 0;
}

int cmd_closest(const Common &c, const Models &m, const Foil &foil) {
    ProjectedPlan pp = closest_plan(m.robot, foil, c.limits());
    emit(c, projected_json(pp, foil), projected_text(pp, foil));
    return 0;
}

int cmd_conflicts(const Common &c, const Models &m, const Foil &foil) {
    SubsequenceOracle oracle(m.robot, foil);
    auto sets = conflict_sets(oracle, c.limits());
    json arr = json::array();
    for (const auto &s : sets)
        arr.push_back(conflict_json(s));
    emit(c, {{"conflict_sets", arr}, {"solvability_checks", oracle.planner_calls()}},
         sets_text(sets));
    return 0;
}

int cmd_plausible(const Common &c, const Models &m, const Foil &foil) {
    SubsequenceOracle oracle(m.robot, foil);
    auto sets = plausible_sets(oracle, c.limits());
    json arr = json::array();
    for (const auto &s : sets)
        arr.push_back(subset_json(s));
    emit(c, {{"plausible_sets", arr}, {"solvability_checks", oracle.planner_calls()}},
         sets_text(sets));
    return 0;
}

int cmd_foil_check(const Common &c, const std::string &foil_path, const std::string &strategy) {
    Models m = load(c);
    Foil foil = read_foil(foil_path);
    if (strategy == "closest")
        return cmd_closest(c, m, foil);
    if (strategy == "conflicts")
        return cmd_conflicts(c, m, foil);
    if (strategy == "plausible")
        return cmd_plausible(c, m, foil);

    bool robot = foil_feasible(m.robot, foil, c.limits());
    bool human = foil_feasible(m.human, foil, c.limits());
    json j{{"feasible_robot", robot}, {"feasible_human", human}};
    std::string text = std::string("robot model: ") + (robot ? "feasible" : "infeasible") +
                       "\nhuman model: " + (human ? "feasible" : "infeasible") + "\n";
    if (robot) {
        SuboptimalityReport r = suboptimality_report(m.robot, foil, c.limits());
        j["best_completion_cost"] = format_rational(r.best_completion_cost);
        j["optimal_cost"] = format_rational(r.optimal_cost);
        j["delta"] = format_rational(r.delta);
        text += "best completion costs " + format_rational(r.best_completion_cost) +
                ", optimal " + format_rational(r.optimal_cost) + "\n";
    }
    emit(c, j, text);
    return 0;
}

int cmd_explain(const Common &c, const std::vector<std::string> &foil_paths) {
    Models m = load(c);
    std::vector<Foil> foils;
    for (const auto &p : foil_paths)
        foils.push_back(read_foil(p));
    ExplanationResult r = contrastive_search(m.robot, m.human, foils, c.limits());
    emit(c, {{"edits", edits_json(r.edits)}, {"goal_tests", r.goal_tests}}, render(r.edits));
    return 0;
}

int cmd_replay(const Common &c, const std::string &transcript_path) {
    ServiceOptions options;
    options.limits = c.limits();
    options.base_dir = std::filesystem::path(transcript_path).parent_path();
    ReplayResult r = replay_transcript(json::parse(read_file(transcript_path)), options);
    emit(c, {{"entries", r.entries}, {"differences", r.differences}},
         [&] {
             std::string text;
             for (const auto &d : r.differences)
                 text += d + "\n";
             return text + std::to_string(r.entries) + " entries, " +
                    std::to_string(r.differences.size()) + " differences\n";
         }());
    return r.identical() ? 0 : 1;
}

int cmd_serve(const Common &c, const std::string &host, int port, double job_wait,
              const std::string &snapshot_dir) {
    ServiceOptions options;
    options.limits = c.limits();
    options.job_wait = std::chrono::milliseconds(static_cast<long long>(job_wait * 1000));
    if (!snapshot_dir.empty())
        options.snapshot_dir = snapshot_dir;
    DialogueService service(options);
    std::size_t restored = service.restore_snapshots();
    std::cerr << "listening on " << host << ':' << port;
    if (restored)
        std::cerr << " (" << restored << " sessions restored)";
    std::cerr << std::endl;
    if (!serve(service, host, port))
        throw Error("BindFailed", "cannot listen on " + host + ":" + std::to_string(port));
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Explainable planning engine: plans, foils, explanations, refinements."};
    app.require_subcommand(1);
    Common common;

    auto add_common = [&](CLI::App *sub, bool models) {
        if (models) {
            sub->add_option("--manifest", common.manifest, "model pair manifest (JSON)");
            sub->add_option("--domain", common.domain, "PDDL domain (used for both models)");
            sub->add_option("--problem", common.problem, "PDDL problem");
        }
        sub->add_option("--format", common.format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--node-budget", common.node_budget, "max generated search nodes");
        sub->add_option("--time-budget", common.time_budget, "seconds per planner call");
    };

    auto *plan = app.add_subcommand("plan", "optimal plan for the planner's model");
    add_common(plan, true);

    std::string plan_file;
    auto *validate = app.add_subcommand("validate", "check a plan against the planner's model");
    add_common(validate, true);
    validate->add_option("--plan", plan_file, "plan file, one action per line")->required();

    std::string foil_file;
    std::string strategy;
    auto *foil_check = app.add_subcommand("foil-check", "classify a foil or run one strategy");
    add_common(foil_check, true);
    foil_check->add_option("--foil", foil_file, "foil file")->required();
    foil_check->add_option("--strategy", strategy, "refinement strategy")
        ->check(CLI::IsMember({"closest", "conflicts", "plausible"}));

    std::vector<std::string> foil_files;
    auto *explain = app.add_subcommand("explain", "minimal model edits refuting the foils");
    add_common(explain, true);
    explain->add_option("--foil", foil_files, "foil file (repeatable)")->required();

    auto *closest = app.add_subcommand("closest", "valid plan using the most foil actions");
    auto *conflicts = app.add_subcommand("conflicts", "minimal conflicting foil subsets");
    auto *plausible = app.add_subcommand("plausible", "maximal completable foil subsets");
    for (auto *sub : {closest, conflicts, plausible}) {
        add_common(sub, true);
        sub->add_option("--foil", foil_file, "foil file")->required();
    }

    std::string host = "127.0.0.1";
    int port = 8080;
    double job_wait = 2.0;
    std::string snapshot_dir;
    auto *serve_cmd = app.add_subcommand("serve", "run the dialogue service over HTTP");
    add_common(serve_cmd, false);
    serve_cmd->add_option("--host", host);
    serve_cmd->add_option("--port", port)->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--job-wait", job_wait, "seconds before a request returns a job handle");
    serve_cmd->add_option("--snapshot-dir", snapshot_dir, "write session transcripts here");

    std::string transcript;
    auto *replay = app.add_subcommand("replay", "rerun a dialogue transcript and diff replies");
    add_common(replay, false);
    replay->add_option("--transcript", transcript, "transcript JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*plan)
            return cmd_plan(common);
        if (*validate)
            return cmd_validate(common, plan_file);
        if (*foil_check)
            return cmd_foil_check(common, foil_file, strategy);
        if (*explain)
            return cmd_explain(common, foil_files);
        if (*closest)
            return cmd_closest(common, load(common), read_foil(foil_file));
        if (*conflicts)
            return cmd_conflicts(common, load(common), read_foil(foil_file));
        if (*plausible)
            return cmd_plausible(common, load(common), read_foil(foil_file));
        if (*serve_cmd)
            return cmd_serve(common, host, port, job_wait, snapshot_dir);
        if (*replay)
            return cmd_replay(common, transcript);
    } catch (const CLI::ValidationError &e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const Error &e) {
        std::cerr << json{{"code", e.code()}, {"message", e.what()}}.dump() << '\n';
        return 1;
    } catch (const json::exception &e) {
        std::cerr << json{{"code", "BadInput"}, {"message", e.what()}}.dump() << '\n';
        return 1;
    }
    return 2;
}
