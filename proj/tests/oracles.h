#pragma once

// Reference implementations used by the tests. Tasks are plain bitmasks
// over at most 16 fluents and every answer comes from exhaustive
// enumeration of the state space; the engine is only touched by to_model.

#include "reconcile/strips.h"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Mask = std::uint32_t;
using Rng = std::mt19937_64;

struct Act {
    std::string name;
    Mask pre = 0;
    Mask add = 0;
    Mask del = 0;
    long cost2 = 2;  // cost in halves, so 3 means 3/2
};

struct Task {
    int n = 0;
    std::vector<Act> acts;
    Mask init = 0;
    Mask goal = 0;
    std::vector<std::string> names;  // fluent names; empty means P00, P01, ...
};

std::string fluent_name(int i);
std::string cost_text(long cost2);  // 3 -> "1.5", 4 -> "2"

struct TaskShape {
    int min_fluents = 3;
    int max_fluents = 12;
    int min_actions = 1;
    int max_actions = 12;
};

Task random_task(Rng &rng, const TaskShape &shape);
std::vector<int> random_foil(Rng &rng, const Task &task, int max_len);

// Bit f of every mask is model fluent f. Needs at most 32 fluents and costs
// that are whole multiples of 1/2.
Task from_model(const reconcile::Model &model);
reconcile::Model to_model(const Task &task, reconcile::ModelTag tag = reconcile::ModelTag::Robot);
Mask to_mask(const reconcile::Model &model, const reconcile::FluentSet &set);
int action_by_name(const Task &task, const std::string &name);

std::optional<Mask> apply(const Task &task, Mask state, int action);

struct Run {
    bool executable = false;
    bool reaches_goal = false;
    Mask state = 0;
    long cost2 = 0;
    std::size_t failed_step = 0;
};
Run execute(const Task &task, const std::vector<std::string> &steps);

// Cheapest plan that contains the foil's actions in order (interleaving
// allowed), by Dijkstra over (state, foil progress) pairs.
// An empty foil gives the optimal plan cost. nullopt: no such plan.
std::optional<long> completion_cost2(const Task &task, const std::vector<int> &foil);
inline std::optional<long> optimal_cost2(const Task &task) { return completion_cost2(task, {}); }

std::vector<int> subsequence(const std::vector<int> &foil, Mask positions);

// solvable[m] for every subset m of foil positions.
std::vector<bool> subset_solvability(const Task &task, const std::vector<int> &foil);

// Sorted by size, then by ascending position lists.
std::vector<Mask> minimal_unsolvable(const std::vector<bool> &solvable, int n);
// Sorted by size descending, then by ascending position lists.
std::vector<Mask> maximal_solvable(const std::vector<bool> &solvable, int n);
// Maximal subsets of {0..n-1} containing none of the given sets.
std::vector<Mask> maximal_avoiding(const std::vector<Mask> &conflicts, int n);

struct Closest {
    int kept = 0;
    long cost2 = 0;
};
// Lexicographic optimum over all subsequences: most observations kept, then
// cheapest completion.
std::optional<Closest> closest(const Task &task, const std::vector<int> &foil);

// Model-space edits, rendered exactly as the engine renders them.
struct Edit {
    enum Kind { Init, Goal, Pre, Add, Del, Cost } kind = Init;
    int action = -1;
    int fluent = -1;
    bool turn_on = true;
    long cost2 = 0;
    std::string render;
};

// Edits taking human toward robot, sorted by rendering.
std::vector<Edit> difference(const Task &human, const Task &robot);

// nullopt when the result has an action adding and deleting one fluent.
std::optional<Task> apply_edits(const Task &human, const std::vector<Edit> &edits);

// Random task differing from base in up to flips parameters.
Task mutate(Rng &rng, const Task &base, int flips);

// Smallest, then lexicographically first, subset of difference(human,
// robot) whose application passes test. Renderings of the chosen edits.
template <typename Test>
std::optional<std::vector<std::string>> minimum_explanation(const Task &human, const Task &robot,
                                                            Test &&test) {
    std::vector<Edit> delta = difference(human, robot);
    const int d = static_cast<int>(delta.size());
    for (int k = 0; k <= d; ++k) {
        std::vector<int> pick(k);
        for (int i = 0; i < k; ++i)
            pick[i] = i;
        for (;;) {
            std::vector<Edit> chosen;
            for (int i : pick)
                chosen.push_back(delta[i]);
            if (auto updated = apply_edits(human, chosen); updated && test(*updated)) {
                std::vector<std::string> out;
                for (const Edit &e : chosen)
                    out.push_back(e.render);
                return out;
            }
            int i = k;
            while (i > 0 && pick[i - 1] == d - k + i - 1)
                --i;
            if (i == 0)
                break;
            ++pick[i - 1];
            for (int j = i; j < k; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }
    return std::nullopt;
}

}  // namespace oracle
