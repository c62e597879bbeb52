#include "reconcile/strips.h"

#include "reconcile/error.h"

#include <algorithm>
#include <bit>
#include <set>

namespace reconcile {

std::size_t FluentSet::count() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_)
        n += std::popcount(w);
    return n;
}

std::vector<int> FluentSet::members() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w) {
            int bit = std::countr_zero(w);
            out.push_back(static_cast<int>(i * 64 + bit));
            w &= w - 1;
        }
    }
    return out;
}

std::size_t FluentSet::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ universe_;
    for (std::uint64_t w : words_)
        h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return h;
}

Model::Model(std::vector<std::string> fluents, std::vector<GroundAction> actions,
             FluentSet init, FluentSet goal, ModelTag tag)
    : fluents_(std::move(fluents)),
      actions_(std::move(actions)),
      init_(std::move(init)),
      goal_(std::move(goal)),
      tag_(tag) {
    const std::size_t n = fluents_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!fluent_index_.emplace(fluents_[i], static_cast<int>(i)).second)
            throw Error("InvalidModel", "duplicate fluent: " + fluents_[i]);
    }
    if (init_.universe() != n || goal_.universe() != n)
        throw Error("InvalidModel", "init/goal not over the model's fluents");

    std::sort(actions_.begin(), actions_.end(),
              [](const GroundAction &a, const GroundAction &b) { return a.name < b.name; });
    for (std::size_t i = 0; i < actions_.size(); ++i) {
        const GroundAction &a = actions_[i];
        if (!action_index_.emplace(a.name, static_cast<int>(i)).second)
            throw Error("InvalidModel", "duplicate action: " + a.name);
        if (a.cost < Rational(0))
            throw Error("InvalidModel", "negative cost for action " + a.name);
        if (a.pre.universe() != n || a.add.universe() != n || a.del.universe() != n)
            throw Error("InvalidModel", "action " + a.name + " references unknown fluents");
        if (a.add.intersects(a.del))
            throw Error("InvalidModel", "action " + a.name + " both adds and deletes a fluent");
    }
}

std::optional<int> Model::find_fluent(std::string_view name) const {
    auto it = fluent_index_.find(std::string(name));
    if (it == fluent_index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<int> Model::find_action(std::string_view name) const {
    auto it = action_index_.find(std::string(name));
    if (it == action_index_.end())
        return std::nullopt;
    return it->second;
}

int Model::action_index(std::string_view name) const {
    if (auto idx = find_action(name))
        return *idx;
    throw unknown_action(std::string(name));
}

FluentSet Model::make_set(std::span<const std::string> names) const {
    FluentSet set(fluents_.size());
    for (const std::string &name : names) {
        auto idx = find_fluent(name);
        if (!idx)
            throw Error("UnknownFluent", "unknown fluent: " + name);
        set.insert(*idx);
    }
    return set;
}

std::vector<std::string> Model::names_of(const FluentSet &set) const {
    std::vector<std::string> out;
    for (int f : set.members())
        out.push_back(fluents_[f]);
    return out;
}

Model Model::with_tag(ModelTag tag) const {
    Model copy = *this;
    copy.tag_ = tag;
    return copy;
}

namespace {

std::set<std::string> name_set(const Model &m, const FluentSet &s) {
    auto names = m.names_of(s);
    return {names.begin(), names.end()};
}

}  // namespace

bool structurally_equal(const Model &a, const Model &b) {
    if (a.num_fluents() != b.num_fluents() || a.actions().size() != b.actions().size())
        return false;
    std::set<std::string> fa(a.fluents().begin(), a.fluents().end());
    std::set<std::string> fb(b.fluents().begin(), b.fluents().end());
    if (fa != fb)
        return false;
    if (name_set(a, a.init()) != name_set(b, b.init()) ||
        name_set(a, a.goal()) != name_set(b, b.goal()))
        return false;
    for (std::size_t i = 0; i < a.actions().size(); ++i) {
        const GroundAction &x = a.actions()[i];
        const GroundAction &y = b.actions()[i];
        if (x.name != y.name || x.cost != y.cost)
            return false;
        if (name_set(a, x.pre) != name_set(b, y.pre) ||
            name_set(a, x.add) != name_set(b, y.add) ||
            name_set(a, x.del) != name_set(b, y.del))
            return false;
    }
    return true;
}

std::optional<State> apply(const Model &model, const State &state, int action) {
    const GroundAction &a = model.actions()[action];
    if (!a.pre.is_subset_of(state))
        return std::nullopt;
    State next = state;
    next.progress(a.add, a.del);
    return next;
}

std::optional<State> apply(const Model &model, const State &state,
                           std::string_view action_name) {
    return apply(model, state, model.action_index(action_name));
}

Execution execute(const Model &model, std::span<const std::string> steps) {
    // Resolve every name first so unknown actions are reported even past an
    // inapplicable step.
    std::vector<int> indices;
    indices.reserve(steps.size());
    for (const std::string &name : steps)
        indices.push_back(model.action_index(name));

    Execution result;
    result.final_state = model.init();
    result.cost = 0;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const GroundAction &a = model.actions()[indices[i]];
        if (!a.pre.is_subset_of(result.final_state)) {
            result.feasible = false;
            result.failed_step = i;
            return result;
        }
        result.final_state.progress(a.add, a.del);
        result.cost += a.cost;
    }
    return result;
}

Validation validate_goal(const Model &model, std::span<const std::string> steps) {
    Execution run = execute(model, steps);
    Validation v;
    v.cost = run.cost;
    if (!run.feasible) {
        v.status = PlanStatus::Infeasible;
        v.failed_step = run.failed_step;
    } else if (model.goal().is_subset_of(run.final_state)) {
        v.status = PlanStatus::Valid;
    } else {
        v.status = PlanStatus::ExecutableNotGoal;
    }
    return v;
}

Plan make_plan(const Model &model, std::vector<std::string> steps) {
    Execution run = execute(model, steps);
    Plan plan{std::move(steps), std::nullopt};
    if (run.feasible)
        plan.cost = run.cost;
    return plan;
}

const char *to_string(PlanStatus status) {
    switch (status) {
    case PlanStatus::Valid: return "VALID";
    case PlanStatus::ExecutableNotGoal: return "EXECUTABLE_NOT_GOAL";
    case PlanStatus::Infeasible: return "INFEASIBLE";
    }
    return "?";
}

Model reindex(const Model &model, std::vector<std::string> fluent_names) {
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < fluent_names.size(); ++i)
        index.emplace(fluent_names[i], static_cast<int>(i));
    const std::size_t n = fluent_names.size();
    auto remap = [&](const FluentSet &set) {
        FluentSet out(n);
        for (int f : set.members()) {
            auto it = index.find(model.fluents()[f]);
            if (it == index.end())
                throw Error("InvalidModel", "reindex drops fluent " + model.fluents()[f]);
            out.insert(it->second);
        }
        return out;
    };
    for (const std::string &name : model.fluents())
        if (!index.count(name))
            throw Error("InvalidModel", "reindex drops fluent " + name);
    std::vector<GroundAction> actions;
    actions.reserve(model.actions().size());
    for (const GroundAction &a : model.actions())
        actions.push_back({a.name, a.cost, remap(a.pre), remap(a.add), remap(a.del)});
    return Model(std::move(fluent_names), std::move(actions), remap(model.init()),
                 remap(model.goal()), model.tag());
}

}  // namespace reconcile
