#include "reconcile/subsets.h"

#include "reconcile/error.h"

#include <algorithm>
#include <bit>

namespace reconcile {

SubsequenceOracle::SubsequenceOracle(Model model, Foil foil, std::size_t foil_cap)
    : model_(std::move(model)), foil_(std::move(foil)) {
    if (foil_.size() > foil_cap || foil_.size() > 63)
        throw Error("FoilTooLarge", "foil has " + std::to_string(foil_.size()) +
                                        " actions; subset enumeration is capped at " +
                                        std::to_string(std::min<std::size_t>(foil_cap, 63)));
    for (const auto &name : foil_.observations)
        model_.action_index(name);
}

bool SubsequenceOracle::solvable(std::uint64_t mask, const SearchLimits &limits) {
    {
        std::lock_guard lock(mutex_);
        if (auto it = verdicts_.find(mask); it != verdicts_.end())
            return it->second;
    }
    Foil sub = subsequence(foil_, mask_positions(mask));
    SolvabilityVerdict v =
        decide_solvability(compile(model_, sub, CompileMode::Hard).compiled, limits);
    std::lock_guard lock(mutex_);
    if (verdicts_.emplace(mask, v.solvable).second) {
        ++planner_calls_;
        if (v.decided_by_m > 0)
            ++pretest_rejections_;
    }
    return v.solvable;
}

std::size_t SubsequenceOracle::planner_calls() const {
    std::lock_guard lock(mutex_);
    return planner_calls_;
}

std::size_t SubsequenceOracle::pretest_rejections() const {
    std::lock_guard lock(mutex_);
    return pretest_rejections_;
}

std::vector<std::size_t> mask_positions(std::uint64_t mask) {
    std::vector<std::size_t> out;
    while (mask) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

std::uint64_t positions_mask(const std::vector<std::size_t> &positions) {
    std::uint64_t mask = 0;
    for (std::size_t p : positions)
        mask |= std::uint64_t{1} << p;
    return mask;
}

namespace {

// Masks with exactly k of the low n bits set, ordered so that the ascending
// position lists come out lexicographically.
std::vector<std::uint64_t> layer(std::size_t n, std::size_t k) {
    std::vector<std::uint64_t> out;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i)
        pick[i] = i;
    for (;;) {
        out.push_back(positions_mask(pick));
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return out;
}

template <typename Report>
Report make_report(const Foil &foil, std::uint64_t mask) {
    Report r;
    r.indices = mask_positions(mask);
    for (std::size_t i : r.indices)
        r.actions.push_back(foil.observations[i]);
    return r;
}

}  // namespace

std::vector<ConflictSet> conflict_sets(SubsequenceOracle &oracle, const SearchLimits &limits) {
    const std::size_t n = oracle.foil().size();
    if (!oracle.solvable(0, limits))
        throw Error("EmptySetConflict",
                    "the empty foil is unsolvable: the planning problem itself has no plan");
    std::vector<std::uint64_t> found;
    std::vector<ConflictSet> out;
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::uint64_t mask : layer(n, k)) {
            bool covers_conflict = std::any_of(found.begin(), found.end(), [&](std::uint64_t c) {
                return (c & mask) == c;
            });
            if (covers_conflict)
                continue;
            if (oracle.solvable(mask, limits))
                continue;
            found.push_back(mask);
            auto set = make_report<ConflictSet>(oracle.foil(), mask);
            set.cannot_complete = k == 1;
            out.push_back(std::move(set));
        }
    }
    return out;
}

std::vector<PlausibleSet> plausible_sets(SubsequenceOracle &oracle, const SearchLimits &limits) {
    const std::size_t n = oracle.foil().size();
    std::vector<std::uint64_t> found;
    std::vector<PlausibleSet> out;
    for (std::size_t k = n + 1; k-- > 0;) {
        for (std::uint64_t mask : k == 0 ? std::vector<std::uint64_t>{0} : layer(n, k)) {
            bool inside_valid = std::any_of(found.begin(), found.end(), [&](std::uint64_t v) {
                return (v & mask) == mask;
            });
            if (inside_valid)
                continue;
            if (!oracle.solvable(mask, limits))
                continue;
            found.push_back(mask);
            out.push_back(make_report<PlausibleSet>(oracle.foil(), mask));
        }
    }
    return out;
}

std::vector<ConflictSet> conflict_sets(const Model &model, const Foil &foil,
                                       const SearchLimits &limits) {
    SubsequenceOracle oracle(model, foil);
    return conflict_sets(oracle, limits);
}

std::vector<PlausibleSet> plausible_sets(const Model &model, const Foil &foil,
                                         const SearchLimits &limits) {
    SubsequenceOracle oracle(model, foil);
    return plausible_sets(oracle, limits);
}

ProjectedPlan resolve_and_plan(const Model &model, const Foil &foil,
                               const std::vector<std::size_t> &kept,
                               const SearchLimits &limits) {
    std::vector<std::size_t> positions = kept;
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    auto completion = best_completion(model, subsequence(foil, positions), limits);
    if (!completion)
        throw Error("InfeasibleSelection",
                    "the kept foil actions admit no valid plan; a conflict is left unresolved");
    // Observation numbers refer to the subsequence; map them back.
    for (int &obs : completion->observation)
        if (obs >= 0)
            obs = static_cast<int>(positions[obs]);
    for (std::size_t &u : completion->used)
        u = positions[u];
    for (std::size_t &d : completion->discarded)
        d = positions[d];
    return *completion;
}

}  // namespace reconcile
