#pragma once

#include "reconcile/strips.h"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stop_token>
#include <string>

namespace reconcile {

struct SearchLimits {
    std::size_t max_generated = 10'000'000;
    std::chrono::milliseconds time_budget{60'000};
    std::stop_token stop;
};

enum class SearchOutcome { Plan, Unsolvable, ResourceLimit };

struct SearchStats {
    std::size_t expanded = 0;
    std::size_t generated = 0;
    double seconds = 0.0;
};

struct SearchResult {
    SearchOutcome outcome = SearchOutcome::Unsolvable;
    Plan plan;
    // Sum of penalties along the plan (only meaningful for penalized search).
    std::uint64_t penalty = 0;
    SearchStats stats;
    std::string limit_reason;
};

// A* with h^max. Among equal f the lower h is expanded first, then the node
// generated earlier; successors are generated in action-name order, so the
// returned plan is a deterministic function of the model.
SearchResult solve_optimal(const Model &model, const SearchLimits &limits = {});

// Same search over lexicographic path costs (sum of penalty, sum of cost).
// penalty has one entry per action of model (in model.actions() order).
SearchResult solve_min_penalty(const Model &model, std::span<const std::uint32_t> penalty,
                               const SearchLimits &limits = {});

// nullopt means no plan exists. Throws ResourceLimit.
std::optional<Rational> optimal_cost(const Model &model, const SearchLimits &limits = {});

// Sound unsolvability pretest: true only if some goal tuple of size <= m is
// unreachable under h^m. m = 1 is plain delete-relaxed reachability.
// Supports 1 <= m <= 4.
bool hm_unsolvable(const Model &model, int m);

struct SolvabilityVerdict {
    bool solvable = false;
    // m of the pretest that proved unsolvability, 0 if the exhaustive
    // search decided.
    int decided_by_m = 0;
    std::size_t states_explored = 0;
};

// Complete decision: h^m pretests for m = 1..max_m, then breadth-first
// search over the reachable states. Throws ResourceLimit.
SolvabilityVerdict decide_solvability(const Model &model, const SearchLimits &limits = {},
                                      int max_m = 2);

inline bool decide_solvable(const Model &model, const SearchLimits &limits = {}) {
    return decide_solvability(model, limits).solvable;
}

}  // namespace reconcile
