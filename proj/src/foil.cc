#include "reconcile/foil.h"

#include "reconcile/error.h"

#include <unordered_map>

namespace reconcile {

Foil subsequence(const Foil &foil, const std::vector<std::size_t> &positions) {
    Foil out;
    for (std::size_t p : positions) {
        if (p >= foil.size())
            throw Error("InvalidChoice", "observation index " + std::to_string(p) + " out of range");
        out.observations.push_back(foil.observations[p]);
    }
    return out;
}

TransformedProblem compile(const Model &model, const Foil &foil, CompileMode mode,
                           std::optional<Rational> discard_penalty) {
    std::vector<int> observed;
    for (const std::string &name : foil.observations)
        observed.push_back(model.action_index(name));

    TransformedProblem tp;
    tp.base = model;
    tp.mode = mode;
    if (discard_penalty) {
        tp.discard_penalty = *discard_penalty;
    } else {
        Rational total(1);
        for (const GroundAction &a : model.actions())
            total += a.cost;
        tp.discard_penalty = total;
    }

    const std::size_t n = model.num_fluents();
    const std::size_t k = foil.size();
    std::vector<std::string> fluents = model.fluents();
    for (std::size_t i = 0; i < k; ++i) {
        std::string met = "MET_O" + std::to_string(i + 1);
        if (model.find_fluent(met))
            throw Error("NameCollision", "model already has a fluent named " + met);
        tp.monitor_fluents.push_back(met);
        fluents.push_back(std::move(met));
    }
    const std::size_t total = n + k;
    auto widen = [&](const FluentSet &s) {
        FluentSet out(total);
        for (int f : s.members())
            out.insert(f);
        return out;
    };
    auto met = [&](std::size_t i) { return static_cast<int>(n + i); };

    std::vector<GroundAction> actions;
    for (const GroundAction &a : model.actions())
        actions.push_back({a.name, a.cost, widen(a.pre), widen(a.add), widen(a.del)});

    for (std::size_t i = 0; i < k; ++i) {
        const GroundAction &o = model.actions()[observed[i]];
        std::string suffix = "_O" + std::to_string(i + 1) + "_" + o.name;

        GroundAction e{"EXPLAIN" + suffix, o.cost, widen(o.pre), widen(o.add), widen(o.del)};
        e.add.insert(met(i));
        if (i > 0)
            e.pre.insert(met(i - 1));
        tp.explain_actions.push_back(e.name);
        actions.push_back(std::move(e));

        if (mode == CompileMode::Soft) {
            GroundAction d{"DISCARD" + suffix, tp.discard_penalty, FluentSet(total),
                           FluentSet(total), FluentSet(total)};
            d.add.insert(met(i));
            if (i > 0)
                d.pre.insert(met(i - 1));
            tp.discard_actions.push_back(d.name);
            actions.push_back(std::move(d));
        }
    }
    for (const GroundAction &a : actions)
        if (a.name.rfind("EXPLAIN_O", 0) == 0 || a.name.rfind("DISCARD_O", 0) == 0)
            if (model.find_action(a.name))
                throw Error("NameCollision", "model already has an action named " + a.name);

    FluentSet goal = widen(model.goal());
    for (std::size_t i = 0; i < k; ++i)
        goal.insert(met(i));
    tp.compiled = Model(std::move(fluents), std::move(actions), widen(model.init()),
                        std::move(goal), model.tag());

    tp.penalty.assign(tp.compiled.actions().size(), 0);
    for (const std::string &d : tp.discard_actions)
        tp.penalty[tp.compiled.action_index(d)] = 1;
    return tp;
}

ProjectedPlan project(const TransformedProblem &problem, const Plan &compiled_plan) {
    std::unordered_map<std::string, std::size_t> explain, discard;
    for (std::size_t i = 0; i < problem.explain_actions.size(); ++i)
        explain.emplace(problem.explain_actions[i], i);
    for (std::size_t i = 0; i < problem.discard_actions.size(); ++i)
        discard.emplace(problem.discard_actions[i], i);

    const std::size_t k = problem.monitor_fluents.size();
    std::vector<char> used(k, 0), dropped(k, 0);
    ProjectedPlan out;
    std::vector<std::string> steps;
    for (const std::string &step : compiled_plan.steps) {
        if (auto it = explain.find(step); it != explain.end()) {
            const std::size_t obs = it->second;
            // Name layout is EXPLAIN_O<i>_<action>.
            std::string base = step.substr(step.find('_', 9) + 1);
            steps.push_back(std::move(base));
            out.origin.push_back(StepOrigin::UsedFoil);
            out.observation.push_back(static_cast<int>(obs));
            used[obs] = 1;
        } else if (auto jt = discard.find(step); jt != discard.end()) {
            dropped[jt->second] = 1;
        } else {
            steps.push_back(step);
            out.origin.push_back(StepOrigin::New);
            out.observation.push_back(-1);
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (used[i])
            out.used.push_back(i);
        else if (dropped[i])
            out.discarded.push_back(i);
    }
    out.plan = make_plan(problem.base, std::move(steps));
    return out;
}

bool foil_feasible(const Model &model, const Foil &foil, const SearchLimits &limits) {
    return decide_solvable(compile(model, foil, CompileMode::Hard).compiled, limits);
}

ProjectedPlan closest_plan(const Model &model, const Foil &foil, const SearchLimits &limits) {
    TransformedProblem tp = compile(model, foil, CompileMode::Soft);
    SearchResult r = solve_min_penalty(tp.compiled, tp.penalty, limits);
    if (r.outcome == SearchOutcome::ResourceLimit)
        throw Error("ResourceLimit", "closest-plan search stopped: " + r.limit_reason);
    if (r.outcome == SearchOutcome::Unsolvable)
        throw Error("BaseUnsolvable", "the planning problem has no plan at all");
    return project(tp, r.plan);
}

std::optional<ProjectedPlan> best_completion(const Model &model, const Foil &foil,
                                             const SearchLimits &limits) {
    TransformedProblem tp = compile(model, foil, CompileMode::Hard);
    SearchResult r = solve_optimal(tp.compiled, limits);
    if (r.outcome == SearchOutcome::ResourceLimit)
        throw Error("ResourceLimit", "completion search stopped: " + r.limit_reason);
    if (r.outcome == SearchOutcome::Unsolvable)
        return std::nullopt;
    return project(tp, r.plan);
}

const char *to_string(StepOrigin origin) {
    return origin == StepOrigin::UsedFoil ? "used-foil" : "new";
}

}  // namespace reconcile
