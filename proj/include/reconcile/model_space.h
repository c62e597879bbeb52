#pragma once

#include "reconcile/foil.h"
#include "reconcile/planner.h"
#include "reconcile/strips.h"

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace reconcile {

enum class ParamKind { InitHas, GoalHas, PreOf, AddEffOf, DelEffOf, CostOf };

// One atom of the model parameterization. InitHas/GoalHas use fluent only,
// PreOf/AddEffOf/DelEffOf use action and fluent, CostOf uses action and cost.
struct ModelParameter {
    ParamKind kind = ParamKind::InitHas;
    std::string action;
    std::string fluent;
    Rational cost;

    // "init-has-F", "A-has-precondition-F", "A-has-cost-3/2", ...
    std::string render() const;

    friend bool operator==(const ModelParameter &, const ModelParameter &) = default;
    friend bool operator<(const ModelParameter &a, const ModelParameter &b) {
        return a.render() < b.render();
    }
};

std::set<ModelParameter> gamma(const Model &model);

enum class EditDirection { AddToModel, RemoveFromModel };

// One unit model update moving a parameter of the source model to its value
// in the target model. A cost update is a single edit: it adds the target's
// CostOf parameter and drops the source's (previous_cost).
struct Edit {
    ModelParameter parameter;
    EditDirection direction = EditDirection::AddToModel;
    std::optional<Rational> previous_cost;

    // "add SEND_SOCIAL_MEDIA_BYENG_BYENG-has-del-effect-NO_SOCIAL_MEDIA"
    std::string render() const;
    // Parameters whose membership the edit flips.
    std::vector<ModelParameter> touched() const;

    friend bool operator==(const Edit &, const Edit &) = default;
};

using EditSet = std::vector<Edit>;

std::string render(const EditSet &edits);

// Γ(from) Δ Γ(to) as unit edits, sorted by rendering. The two models must
// share their fluent vocabulary and action names (see align_models).
EditSet model_difference(const Model &from, const Model &to);

// from with every listed parameter moved to its value in to.
// Throws IllegalEdit for edits outside model_difference(from, to).
Model apply_edits(const Model &from, const Model &to, const EditSet &edits);

// The same parameters as edits that move to back toward from.
EditSet invert_edits(const Model &from, const Model &to, const EditSet &edits);

struct ExplanationResult {
    EditSet edits;
    std::size_t goal_tests = 0;
};

// Smallest (then lexicographically smallest) edit set after which pi_star is
// optimal in the updated human model.
ExplanationResult mce_search(const Model &robot, const Model &human, const Plan &pi_star,
                             const SearchLimits &limits = {});

// Smallest (then lexicographically smallest) edit set after which no foil
// has a valid completion in the updated human model.
// Throws FoilFeasibleInRobot, InvalidArgument (no foils), ResourceLimit.
ExplanationResult contrastive_search(const Model &robot, const Model &human,
                                     const std::vector<Foil> &foils,
                                     const SearchLimits &limits = {});

struct SuboptimalityReport {
    Rational best_completion_cost;
    Rational optimal_cost;
    Rational delta;
    ProjectedPlan completion;
};

// Throws FoilInfeasible when the foil has no completion in robot.
SuboptimalityReport suboptimality_report(const Model &robot, const Foil &foil,
                                         const SearchLimits &limits = {});

}  // namespace reconcile
