#pragma once

#include "reconcile/rational.h"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace reconcile {

// Packed membership vector over the fluent indices of one Model.
class FluentSet {
public:
    FluentSet() = default;
    explicit FluentSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    std::size_t universe() const { return universe_; }

    bool contains(int fluent) const {
        return (words_[fluent >> 6] >> (fluent & 63)) & 1u;
    }
    void insert(int fluent) { words_[fluent >> 6] |= std::uint64_t{1} << (fluent & 63); }
    void erase(int fluent) { words_[fluent >> 6] &= ~(std::uint64_t{1} << (fluent & 63)); }

    bool is_subset_of(const FluentSet &other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i])
                return false;
        return true;
    }
    bool intersects(const FluentSet &other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i])
                return true;
        return false;
    }
    bool empty() const {
        for (std::uint64_t w : words_)
            if (w)
                return false;
        return true;
    }
    std::size_t count() const;
    std::vector<int> members() const;

    // (this \ del) ∪ add, in place.
    void progress(const FluentSet &add, const FluentSet &del) {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] = (words_[i] & ~del.words_[i]) | add.words_[i];
    }

    friend bool operator==(const FluentSet &, const FluentSet &) = default;

    std::size_t hash() const;

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

using State = FluentSet;

struct FluentSetHash {
    std::size_t operator()(const FluentSet &s) const { return s.hash(); }
};

struct GroundAction {
    std::string name;
    Rational cost;
    FluentSet pre;
    FluentSet add;
    FluentSet del;
};

enum class ModelTag { Robot, Human };

// Grounded STRIPS problem <F, A, I, G>. Immutable once constructed; the
// constructor rejects duplicate names, negative costs, overlapping add/delete
// sets and sets over the wrong universe. Actions are kept sorted by name so
// that every search iterates them in the same order.
class Model {
public:
    Model() = default;
    Model(std::vector<std::string> fluents, std::vector<GroundAction> actions,
          FluentSet init, FluentSet goal, ModelTag tag = ModelTag::Robot);

    const std::vector<std::string> &fluents() const { return fluents_; }
    std::size_t num_fluents() const { return fluents_.size(); }
    const std::vector<GroundAction> &actions() const { return actions_; }
    const FluentSet &init() const { return init_; }
    const FluentSet &goal() const { return goal_; }
    ModelTag tag() const { return tag_; }

    std::optional<int> find_fluent(std::string_view name) const;
    std::optional<int> find_action(std::string_view name) const;
    // Throws UnknownAction.
    int action_index(std::string_view name) const;
    const GroundAction &action(std::string_view name) const {
        return actions_[action_index(name)];
    }

    FluentSet make_set(std::span<const std::string> names) const;
    std::vector<std::string> names_of(const FluentSet &set) const;

    Model with_tag(ModelTag tag) const;

private:
    std::vector<std::string> fluents_;
    std::vector<GroundAction> actions_;
    FluentSet init_;
    FluentSet goal_;
    ModelTag tag_ = ModelTag::Robot;
    std::unordered_map<std::string, int> fluent_index_;
    std::unordered_map<std::string, int> action_index_;
};

// Same fluent vocabulary, actions, init and goal compared by name. The tag
// and the internal fluent numbering are ignored.
bool structurally_equal(const Model &a, const Model &b);

struct Plan {
    std::vector<std::string> steps;
    // nullopt marks an infeasible sequence (cost infinity).
    std::optional<Rational> cost;
};

// nullopt when the action is inapplicable in state.
std::optional<State> apply(const Model &model, const State &state, int action);
std::optional<State> apply(const Model &model, const State &state,
                           std::string_view action_name);

struct Execution {
    bool feasible = true;
    // On failure: the state in which step failed_step was inapplicable.
    State final_state;
    Rational cost;
    std::size_t failed_step = 0;
};

Execution execute(const Model &model, std::span<const std::string> steps);

enum class PlanStatus { Valid, ExecutableNotGoal, Infeasible };

struct Validation {
    PlanStatus status = PlanStatus::Infeasible;
    Rational cost;
    std::size_t failed_step = 0;
};

Validation validate_goal(const Model &model, std::span<const std::string> steps);

// Plan with its cost in model filled in (nullopt if not executable).
Plan make_plan(const Model &model, std::vector<std::string> steps);

const char *to_string(PlanStatus status);

// The same model expressed over a different fluent numbering. fluent_names
// must contain every fluent the model has; extra names become fluents that
// nothing references.
Model reindex(const Model &model, std::vector<std::string> fluent_names);

}  // namespace reconcile
