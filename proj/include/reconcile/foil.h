#pragma once

#include "reconcile/planner.h"
#include "reconcile/strips.h"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace reconcile {

// A user-proposed partial plan: observations o_1..o_n that must appear in
// this order (other actions may be interleaved). Duplicates are distinct
// observations.
struct Foil {
    std::vector<std::string> observations;

    std::size_t size() const { return observations.size(); }
    bool empty() const { return observations.empty(); }
};

// Subsequence of foil at the given (ascending) positions.
Foil subsequence(const Foil &foil, const std::vector<std::size_t> &positions);

enum class CompileMode { Soft, Hard };

// Observation compilation. For observation i (1-based in the generated
// names) the compiled model has
//   MET_O<i>              monitor fluent, required by the goal,
//   EXPLAIN_O<i>_<action> copy of the action that also adds MET_O<i>,
//   DISCARD_O<i>_<action> (soft mode only) adds MET_O<i> for discard_penalty.
// Both explain and discard for i > 1 require MET_O<i-1>, which keeps the
// monitors firing in foil order.
struct TransformedProblem {
    Model base;
    Model compiled;
    CompileMode mode = CompileMode::Hard;
    Rational discard_penalty;
    std::vector<std::string> monitor_fluents;
    std::vector<std::string> explain_actions;
    std::vector<std::string> discard_actions;
    // Per compiled action (in compiled.actions() order): 1 for discards.
    std::vector<std::uint32_t> penalty;
};

// discard_penalty defaults to 1 + the sum of all base action costs.
// Throws UnknownAction, NameCollision.
TransformedProblem compile(const Model &model, const Foil &foil, CompileMode mode,
                           std::optional<Rational> discard_penalty = std::nullopt);

enum class StepOrigin { UsedFoil, New };

struct ProjectedPlan {
    Plan plan;  // base actions only; cost measured in the base model
    std::vector<StepOrigin> origin;
    // Observation index (0-based) behind each UsedFoil step, -1 for New.
    std::vector<int> observation;
    std::vector<std::size_t> used;
    std::vector<std::size_t> discarded;
};

// Maps explain copies back to their base action and drops discards.
ProjectedPlan project(const TransformedProblem &problem, const Plan &compiled_plan);

// True iff some valid plan contains the foil's observations in order.
bool foil_feasible(const Model &model, const Foil &foil, const SearchLimits &limits = {});

// Valid plan using as many observations as possible; among those, the
// cheapest. Throws BaseUnsolvable, ResourceLimit.
ProjectedPlan closest_plan(const Model &model, const Foil &foil, const SearchLimits &limits = {});

// Cost-optimal plan of the hard compilation, projected. nullopt when no
// completion of the foil exists. Throws ResourceLimit.
std::optional<ProjectedPlan> best_completion(const Model &model, const Foil &foil,
                                             const SearchLimits &limits = {});

const char *to_string(StepOrigin origin);

}  // namespace reconcile
