#pragma once

#include "reconcile/foil.h"
#include "reconcile/planner.h"
#include "reconcile/strips.h"

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace reconcile {

inline constexpr std::size_t kDefaultFoilCap = 12;

// Memoized solvability of hard compilations of foil subsequences, keyed by
// the bitmask of kept observation positions. Safe for concurrent use.
class SubsequenceOracle {
public:
    SubsequenceOracle(Model model, Foil foil, std::size_t foil_cap = kDefaultFoilCap);

    const Model &model() const { return model_; }
    const Foil &foil() const { return foil_; }

    // Throws ResourceLimit.
    bool solvable(std::uint64_t mask, const SearchLimits &limits = {});

    std::size_t planner_calls() const;
    std::size_t pretest_rejections() const;

private:
    Model model_;
    Foil foil_;
    mutable std::mutex mutex_;
    std::unordered_map<std::uint64_t, bool> verdicts_;
    std::size_t planner_calls_ = 0;
    std::size_t pretest_rejections_ = 0;
};

std::vector<std::size_t> mask_positions(std::uint64_t mask);
std::uint64_t positions_mask(const std::vector<std::size_t> &positions);

struct SubsetReport {
    std::vector<std::size_t> indices;  // ascending foil positions
    std::vector<std::string> actions;
};

struct ConflictSet : SubsetReport {
    // A singleton conflict: including this action alone rules out any
    // valid completion.
    bool cannot_complete = false;
};

struct PlausibleSet : SubsetReport {};

// All minimal unsolvable subsequences, smallest first, then by position.
// Throws FoilTooLarge, EmptySetConflict (base problem unsolvable),
// ResourceLimit.
std::vector<ConflictSet> conflict_sets(SubsequenceOracle &oracle, const SearchLimits &limits = {});

// All maximal solvable subsequences, largest first, then by position.
std::vector<PlausibleSet> plausible_sets(SubsequenceOracle &oracle,
                                         const SearchLimits &limits = {});

std::vector<ConflictSet> conflict_sets(const Model &model, const Foil &foil,
                                       const SearchLimits &limits = {});
std::vector<PlausibleSet> plausible_sets(const Model &model, const Foil &foil,
                                         const SearchLimits &limits = {});

// Optimal plan containing exactly the kept observations in foil order.
// Throws InfeasibleSelection.
ProjectedPlan resolve_and_plan(const Model &model, const Foil &foil,
                               const std::vector<std::size_t> &kept,
                               const SearchLimits &limits = {});

}  // namespace reconcile
