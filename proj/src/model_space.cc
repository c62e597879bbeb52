#include "reconcile/model_space.h"

#include "reconcile/error.h"

#include <algorithm>
#include <map>
#include <numeric>

namespace reconcile {

std::string ModelParameter::render() const {
    switch (kind) {
    case ParamKind::InitHas: return "init-has-" + fluent;
    case ParamKind::GoalHas: return "goal-has-" + fluent;
    case ParamKind::PreOf: return action + "-has-precondition-" + fluent;
    case ParamKind::AddEffOf: return action + "-has-add-effect-" + fluent;
    case ParamKind::DelEffOf: return action + "-has-del-effect-" + fluent;
    case ParamKind::CostOf: return action + "-has-cost-" + format_rational(cost);
    }
    return {};
}

std::set<ModelParameter> gamma(const Model &model) {
    std::set<ModelParameter> out;
    for (const auto &f : model.names_of(model.init()))
        out.insert({ParamKind::InitHas, "", f, Rational(0)});
    for (const auto &f : model.names_of(model.goal()))
        out.insert({ParamKind::GoalHas, "", f, Rational(0)});
    for (const GroundAction &a : model.actions()) {
        out.insert({ParamKind::CostOf, a.name, "", a.cost});
        for (const auto &f : model.names_of(a.pre))
            out.insert({ParamKind::PreOf, a.name, f, Rational(0)});
        for (const auto &f : model.names_of(a.add))
            out.insert({ParamKind::AddEffOf, a.name, f, Rational(0)});
        for (const auto &f : model.names_of(a.del))
            out.insert({ParamKind::DelEffOf, a.name, f, Rational(0)});
    }
    return out;
}

std::string Edit::render() const {
    return std::string(direction == EditDirection::AddToModel ? "add " : "remove ") +
           parameter.render();
}

std::vector<ModelParameter> Edit::touched() const {
    std::vector<ModelParameter> out{parameter};
    if (previous_cost)
        out.push_back({ParamKind::CostOf, parameter.action, "", *previous_cost});
    return out;
}

std::string render(const EditSet &edits) {
    std::string out;
    for (const Edit &e : edits)
        out += e.render() + "\n";
    return out;
}

namespace {

void check_aligned(const Model &a, const Model &b) {
    if (a.fluents() != b.fluents())
        throw Error("VocabularyMismatch", "models do not share a fluent vocabulary");
    if (a.actions().size() != b.actions().size())
        throw Error("VocabularyMismatch", "models do not share their action names");
    for (std::size_t i = 0; i < a.actions().size(); ++i)
        if (a.actions()[i].name != b.actions()[i].name)
            throw Error("VocabularyMismatch", "models do not share their action names");
}

void diff_sets(const Model &m, const FluentSet &from, const FluentSet &to, ParamKind kind,
               const std::string &action, EditSet &out) {
    for (std::size_t f = 0; f < m.num_fluents(); ++f) {
        bool in_from = from.contains(static_cast<int>(f));
        bool in_to = to.contains(static_cast<int>(f));
        if (in_from == in_to)
            continue;
        out.push_back({{kind, action, m.fluents()[f], Rational(0)},
                       in_to ? EditDirection::AddToModel : EditDirection::RemoveFromModel,
                       std::nullopt});
    }
}

// Identity of the model slot an edit writes to, ignoring values.
std::string slot(const Edit &e) {
    return std::to_string(static_cast<int>(e.parameter.kind)) + "|" + e.parameter.action + "|" +
           e.parameter.fluent;
}

}  // namespace

EditSet model_difference(const Model &from, const Model &to) {
    check_aligned(from, to);
    EditSet out;
    diff_sets(from, from.init(), to.init(), ParamKind::InitHas, "", out);
    diff_sets(from, from.goal(), to.goal(), ParamKind::GoalHas, "", out);
    for (std::size_t i = 0; i < from.actions().size(); ++i) {
        const GroundAction &x = from.actions()[i];
        const GroundAction &y = to.actions()[i];
        if (x.cost != y.cost)
            out.push_back({{ParamKind::CostOf, x.name, "", y.cost}, EditDirection::AddToModel,
                           x.cost});
        diff_sets(from, x.pre, y.pre, ParamKind::PreOf, x.name, out);
        diff_sets(from, x.add, y.add, ParamKind::AddEffOf, x.name, out);
        diff_sets(from, x.del, y.del, ParamKind::DelEffOf, x.name, out);
    }
    std::sort(out.begin(), out.end(),
              [](const Edit &a, const Edit &b) { return a.render() < b.render(); });
    return out;
}

Model apply_edits(const Model &from, const Model &to, const EditSet &edits) {
    EditSet diff = model_difference(from, to);
    std::set<std::string> seen;
    for (const Edit &e : edits) {
        if (std::find(diff.begin(), diff.end(), e) == diff.end())
            throw Error("IllegalEdit", "edit not in the model difference: " + e.render());
        if (!seen.insert(slot(e)).second)
            throw Error("IllegalEdit", "parameter edited twice: " + e.render());
    }

    std::vector<GroundAction> actions = from.actions();
    FluentSet init = from.init();
    FluentSet goal = from.goal();
    for (const Edit &e : edits) {
        const ModelParameter &p = e.parameter;
        auto toggle = [&](FluentSet &set) {
            int f = *from.find_fluent(p.fluent);
            if (e.direction == EditDirection::AddToModel)
                set.insert(f);
            else
                set.erase(f);
        };
        switch (p.kind) {
        case ParamKind::InitHas: toggle(init); break;
        case ParamKind::GoalHas: toggle(goal); break;
        case ParamKind::PreOf: toggle(actions[from.action_index(p.action)].pre); break;
        case ParamKind::AddEffOf: toggle(actions[from.action_index(p.action)].add); break;
        case ParamKind::DelEffOf: toggle(actions[from.action_index(p.action)].del); break;
        case ParamKind::CostOf: actions[from.action_index(p.action)].cost = p.cost; break;
        }
    }
    // A partial edit set can leave an action adding and deleting the same
    // fluent (human adds f, robot deletes f, only one side moved). That is
    // not a STRIPS model.
    for (const GroundAction &a : actions)
        if (a.add.intersects(a.del))
            throw Error("IllegalEdit",
                        "edits leave action " + a.name + " adding and deleting the same fluent");
    return Model(from.fluents(), std::move(actions), std::move(init), std::move(goal), from.tag());
}

EditSet invert_edits(const Model &from, const Model &to, const EditSet &edits) {
    std::set<std::string> slots;
    for (const Edit &e : edits)
        slots.insert(slot(e));
    EditSet out;
    for (const Edit &e : model_difference(to, from))
        if (slots.count(slot(e)))
            out.push_back(e);
    return out;
}

namespace {

// Visits index combinations of size k over [0, n) in lexicographic order;
// stops at the first one for which accept returns true.
template <typename Accept>
std::optional<std::vector<std::size_t>> first_combination(std::size_t n, std::size_t k,
                                                          Accept &&accept) {
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
        if (accept(pick))
            return pick;
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return std::nullopt;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j)
            pick[j] = pick[j - 1] + 1;
    }
}

template <typename GoalTest>
ExplanationResult model_space_search(const Model &robot, const Model &human, GoalTest &&test) {
    EditSet delta = model_difference(human, robot);
    ExplanationResult result;
    for (std::size_t k = 0; k <= delta.size(); ++k) {
        auto hit = first_combination(delta.size(), k, [&](const std::vector<std::size_t> &pick) {
            EditSet edits;
            for (std::size_t i : pick)
                edits.push_back(delta[i]);
            Model updated;
            try {
                updated = apply_edits(human, robot, edits);
            } catch (const Error &e) {
                if (e.code() != "IllegalEdit")
                    throw;
                return false;  // transient add/delete overlap, not a model
            }
            ++result.goal_tests;
            return test(updated);
        });
        if (hit) {
            for (std::size_t i : *hit)
                result.edits.push_back(delta[i]);
            return result;
        }
    }
    throw Error("NoExplanation", "no subset of the model difference satisfies the goal test");
}

}  // namespace

ExplanationResult mce_search(const Model &robot, const Model &human, const Plan &pi_star,
                             const SearchLimits &limits) {
    return model_space_search(robot, human, [&](const Model &updated) {
        Validation v = validate_goal(updated, pi_star.steps);
        if (v.status != PlanStatus::Valid)
            return false;
        auto best = optimal_cost(updated, limits);
        return best && *best == v.cost;
    });
}

ExplanationResult contrastive_search(const Model &robot, const Model &human,
                                     const std::vector<Foil> &foils, const SearchLimits &limits) {
    if (foils.empty())
        throw Error("InvalidArgument", "contrastive search needs at least one foil");
    for (const Foil &foil : foils)
        if (foil_feasible(robot, foil, limits))
            throw Error("FoilFeasibleInRobot",
                        "foil has a valid completion in the planner's model; "
                        "use the suboptimality report instead");

    // Cheap rejections first: smaller compilations are tested before larger.
    std::vector<std::size_t> order(foils.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return foils[a].size() < foils[b].size();
    });
    return model_space_search(robot, human, [&](const Model &updated) {
        for (std::size_t i : order)
            if (foil_feasible(updated, foils[i], limits))
                return false;
        return true;
    });
}

SuboptimalityReport suboptimality_report(const Model &robot, const Foil &foil,
                                         const SearchLimits &limits) {
    auto completion = best_completion(robot, foil, limits);
    if (!completion)
        throw Error("FoilInfeasible", "foil has no valid completion in the planner's model");
    auto best = optimal_cost(robot, limits);
    SuboptimalityReport report;
    report.best_completion_cost = *completion->plan.cost;
    report.optimal_cost = *best;
    report.delta = report.best_completion_cost - report.optimal_cost;
    report.completion = std::move(*completion);
    return report;
}

}  // namespace reconcile
