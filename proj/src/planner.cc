#include "reconcile/planner.h"

#include "reconcile/error.h"

#include <algorithm>
#include <deque>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace reconcile {

namespace {

using Clock = std::chrono::steady_clock;

// Delete-relaxation structure shared by h^max evaluations on one model.
class MaxHeuristic {
public:
    explicit MaxHeuristic(const Model &model) : model_(model) {
        const auto &actions = model.actions();
        pre_count_.resize(actions.size());
        pre_of_.resize(model.num_fluents());
        for (std::size_t a = 0; a < actions.size(); ++a) {
            auto pre = actions[a].pre.members();
            pre_count_[a] = static_cast<int>(pre.size());
            for (int f : pre)
                pre_of_[f].push_back(static_cast<int>(a));
            if (pre.empty())
                no_pre_.push_back(static_cast<int>(a));
            add_.push_back(actions[a].add.members());
        }
        goal_ = model.goal().members();
    }

    // nullopt: goal unreachable even under the relaxation.
    std::optional<Rational> operator()(const State &state) {
        if (goal_.empty())
            return Rational(0);
        const std::size_t n = model_.num_fluents();
        std::vector<std::optional<Rational>> cost(n);
        std::vector<int> missing = pre_count_;
        std::vector<Rational> action_cost(model_.actions().size());

        using Entry = std::pair<Rational, int>;
        auto cmp = [](const Entry &x, const Entry &y) {
            return x.first > y.first || (x.first == y.first && x.second > y.second);
        };
        std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> queue(cmp);

        auto fire = [&](int a, const Rational &support) {
            Rational c = support + model_.actions()[a].cost;
            for (int f : add_[a]) {
                if (!cost[f] || c < *cost[f]) {
                    cost[f] = c;
                    queue.emplace(c, f);
                }
            }
        };

        for (int f : state.members()) {
            cost[f] = Rational(0);
            queue.emplace(Rational(0), f);
        }
        for (int a : no_pre_)
            fire(a, Rational(0));

        std::size_t goals_left = goal_.size();
        std::vector<char> done(n, 0);
        Rational h(0);
        while (!queue.empty()) {
            auto [c, f] = queue.top();
            queue.pop();
            if (done[f] || c != *cost[f])
                continue;
            done[f] = 1;
            if (model_.goal().contains(f)) {
                h = std::max(h, c);
                if (--goals_left == 0)
                    return h;
            }
            for (int a : pre_of_[f]) {
                action_cost[a] = std::max(action_cost[a], c);
                if (--missing[a] == 0)
                    fire(a, action_cost[a]);
            }
        }
        if (goals_left == 0)
            return h;
        return std::nullopt;
    }

private:
    const Model &model_;
    std::vector<int> pre_count_;
    std::vector<std::vector<int>> pre_of_;
    std::vector<std::vector<int>> add_;
    std::vector<int> no_pre_;
    std::vector<int> goal_;
};

struct PathCost {
    std::uint64_t penalty = 0;
    Rational cost;

    friend bool operator<(const PathCost &a, const PathCost &b) {
        return a.penalty < b.penalty || (a.penalty == b.penalty && a.cost < b.cost);
    }
    friend bool operator==(const PathCost &, const PathCost &) = default;
};

struct Node {
    State state;
    PathCost g;
    Rational h;
    int parent = -1;
    int action = -1;
};

struct OpenEntry {
    PathCost f;
    Rational h;
    std::uint64_t serial;
    int node;
    PathCost g;
};

struct OpenOrder {
    bool operator()(const OpenEntry &a, const OpenEntry &b) const {
        // priority_queue pops the largest; invert for a min-queue.
        if (a.f < b.f) return false;
        if (b.f < a.f) return true;
        if (a.h != b.h) return a.h > b.h;
        return a.serial > b.serial;
    }
};

SearchResult astar(const Model &model, std::span<const std::uint32_t> penalty,
                   const SearchLimits &limits) {
    const auto start_time = Clock::now();
    SearchResult result;
    auto finish = [&](SearchOutcome outcome) {
        result.outcome = outcome;
        result.stats.seconds =
            std::chrono::duration<double>(Clock::now() - start_time).count();
        return result;
    };

    MaxHeuristic hmax(model);
    std::vector<Node> nodes;
    std::unordered_map<State, int, FluentSetHash> index;
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenOrder> open;
    std::uint64_t serial = 0;

    auto h0 = hmax(model.init());
    if (!h0)
        return finish(SearchOutcome::Unsolvable);
    nodes.push_back({model.init(), PathCost{0, Rational(0)}, *h0, -1, -1});
    index.emplace(model.init(), 0);
    open.push({PathCost{0, *h0}, *h0, serial++, 0, nodes[0].g});
    result.stats.generated = 1;

    const auto &actions = model.actions();
    while (!open.empty()) {
        OpenEntry top = open.top();
        open.pop();
        if (!(top.g == nodes[top.node].g))
            continue;  // stale entry, a cheaper path was found later

        if (limits.stop.stop_requested()) {
            result.limit_reason = "cancelled";
            return finish(SearchOutcome::ResourceLimit);
        }
        if ((result.stats.expanded & 255) == 0 && Clock::now() - start_time > limits.time_budget) {
            result.limit_reason = "time budget exceeded";
            return finish(SearchOutcome::ResourceLimit);
        }

        const int current = top.node;
        if (model.goal().is_subset_of(nodes[current].state)) {
            std::vector<std::string> steps;
            for (int n = current; nodes[n].parent >= 0; n = nodes[n].parent)
                steps.push_back(actions[nodes[n].action].name);
            std::reverse(steps.begin(), steps.end());
            result.plan.steps = std::move(steps);
            result.plan.cost = nodes[current].g.cost;
            result.penalty = nodes[current].g.penalty;
            return finish(SearchOutcome::Plan);
        }
        ++result.stats.expanded;

        for (std::size_t a = 0; a < actions.size(); ++a) {
            const GroundAction &act = actions[a];
            if (!act.pre.is_subset_of(nodes[current].state))
                continue;
            State next = nodes[current].state;
            next.progress(act.add, act.del);
            PathCost g = nodes[current].g;
            g.cost += act.cost;
            if (!penalty.empty())
                g.penalty += penalty[a];

            auto it = index.find(next);
            int target;
            if (it == index.end()) {
                auto h = hmax(next);
                if (!h)
                    continue;
                if (++result.stats.generated > limits.max_generated) {
                    result.limit_reason = "node budget exceeded";
                    return finish(SearchOutcome::ResourceLimit);
                }
                target = static_cast<int>(nodes.size());
                nodes.push_back({next, g, *h, current, static_cast<int>(a)});
                index.emplace(std::move(next), target);
            } else {
                target = it->second;
                if (!(g < nodes[target].g))
                    continue;
                nodes[target].g = g;
                nodes[target].parent = current;
                nodes[target].action = static_cast<int>(a);
            }
            const Node &t = nodes[target];
            open.push({PathCost{g.penalty, g.cost + t.h}, t.h, serial++, target, g});
        }
    }
    return finish(SearchOutcome::Unsolvable);
}

// Tuples of up to four fluent indices packed 16 bits each, sorted ascending,
// stored +1 so that a zero slot means "absent".
using Tuple = std::uint64_t;

Tuple pack(const std::vector<int> &sorted) {
    Tuple t = 0;
    for (int f : sorted)
        t = (t << 16) | static_cast<Tuple>(f + 1);
    return t;
}

class HmReachability {
public:
    HmReachability(const Model &model, int m) : model_(model), m_(m) {}

    bool goal_unreachable() {
        run();
        return !all_subtuples_reachable(model_.goal().members());
    }

private:
    // Calls visit(tuple) for every nonempty subset of items with size <= m.
    template <typename Visit>
    bool for_each_subtuple(const std::vector<int> &items, Visit &&visit) const {
        std::vector<int> chosen;
        return subtuples_from(items, 0, chosen, visit);
    }

    template <typename Visit>
    bool subtuples_from(const std::vector<int> &items, std::size_t start,
                        std::vector<int> &chosen, Visit &visit) const {
        for (std::size_t i = start; i < items.size(); ++i) {
            chosen.push_back(items[i]);
            if (!visit(chosen)) {
                chosen.pop_back();
                return false;
            }
            if (static_cast<int>(chosen.size()) < m_ && !subtuples_from(items, i + 1, chosen, visit)) {
                chosen.pop_back();
                return false;
            }
            chosen.pop_back();
        }
        return true;
    }

    bool all_subtuples_reachable(const std::vector<int> &sorted_items) const {
        return for_each_subtuple(sorted_items, [&](const std::vector<int> &t) {
            return reachable_.count(pack(t)) > 0;
        });
    }

    bool insert(std::vector<int> t) {
        std::sort(t.begin(), t.end());
        return reachable_.insert(pack(t)).second;
    }

    // Tuple t is reachable if t ⊆ I, or some action a adds part of t,
    // deletes none of it, and pre(a) ∪ (t \ add(a)) is reachable tuple-wise.
    void run() {
        for_each_subtuple(model_.init().members(), [&](const std::vector<int> &t) {
            insert(t);
            return true;
        });
        const int n = static_cast<int>(model_.num_fluents());
        bool changed = true;
        while (changed) {
            changed = false;
            for (const GroundAction &a : model_.actions()) {
                std::vector<int> pre = a.pre.members();
                if (!all_subtuples_reachable(pre))
                    continue;
                std::vector<int> untouched;
                for (int f = 0; f < n; ++f)
                    if (!a.add.contains(f) && !a.del.contains(f))
                        untouched.push_back(f);
                for_each_subtuple(a.add.members(), [&](const std::vector<int> &achieved) {
                    if (insert(achieved))
                        changed = true;
                    std::vector<int> extra;
                    extend(achieved, pre, untouched, 0, extra, changed);
                    return true;
                });
            }
        }
    }

    void extend(const std::vector<int> &achieved, const std::vector<int> &pre,
                const std::vector<int> &candidates, std::size_t start,
                std::vector<int> &extra, bool &changed) {
        if (static_cast<int>(achieved.size() + extra.size()) >= m_)
            return;
        for (std::size_t i = start; i < candidates.size(); ++i) {
            extra.push_back(candidates[i]);
            std::vector<int> support = pre;
            for (int f : extra)
                if (!std::binary_search(pre.begin(), pre.end(), f))
                    support.push_back(f);
            std::sort(support.begin(), support.end());
            if (all_subtuples_reachable(support)) {
                std::vector<int> t = achieved;
                t.insert(t.end(), extra.begin(), extra.end());
                if (insert(t))
                    changed = true;
                extend(achieved, pre, candidates, i + 1, extra, changed);
            }
            extra.pop_back();
        }
    }

    const Model &model_;
    int m_;
    std::unordered_set<Tuple> reachable_;
};

}  // namespace

SearchResult solve_optimal(const Model &model, const SearchLimits &limits) {
    return astar(model, {}, limits);
}

SearchResult solve_min_penalty(const Model &model, std::span<const std::uint32_t> penalty,
                               const SearchLimits &limits) {
    if (penalty.size() != model.actions().size())
        throw std::invalid_argument("penalty vector does not match the action count");
    return astar(model, penalty, limits);
}

std::optional<Rational> optimal_cost(const Model &model, const SearchLimits &limits) {
    SearchResult r = solve_optimal(model, limits);
    if (r.outcome == SearchOutcome::ResourceLimit)
        throw Error("ResourceLimit", "optimal search stopped: " + r.limit_reason);
    if (r.outcome == SearchOutcome::Unsolvable)
        return std::nullopt;
    return r.plan.cost;
}

bool hm_unsolvable(const Model &model, int m) {
    if (m < 1 || m > 4)
        throw std::invalid_argument("h^m pretest supports 1 <= m <= 4");
    if (model.num_fluents() >= 0xffff)
        throw std::invalid_argument("h^m pretest supports fewer than 65535 fluents");
    return HmReachability(model, m).goal_unreachable();
}

SolvabilityVerdict decide_solvability(const Model &model, const SearchLimits &limits, int max_m) {
    SolvabilityVerdict verdict;
    for (int m = 1; m <= max_m; ++m) {
        if (hm_unsolvable(model, m)) {
            verdict.solvable = false;
            verdict.decided_by_m = m;
            return verdict;
        }
    }

    const auto start_time = Clock::now();
    std::unordered_set<State, FluentSetHash> seen;
    std::deque<State> frontier;
    seen.insert(model.init());
    frontier.push_back(model.init());
    const auto &actions = model.actions();
    while (!frontier.empty()) {
        State s = std::move(frontier.front());
        frontier.pop_front();
        ++verdict.states_explored;
        if (model.goal().is_subset_of(s)) {
            verdict.solvable = true;
            return verdict;
        }
        if (limits.stop.stop_requested())
            throw Error("ResourceLimit", "solvability search cancelled");
        if ((verdict.states_explored & 255) == 0 && Clock::now() - start_time > limits.time_budget)
            throw Error("ResourceLimit", "solvability search exceeded the time budget");
        for (const GroundAction &a : actions) {
            if (!a.pre.is_subset_of(s))
                continue;
            State next = s;
            next.progress(a.add, a.del);
            if (seen.insert(next).second) {
                if (seen.size() > limits.max_generated)
                    throw Error("ResourceLimit", "solvability search exceeded the node budget");
                frontier.push_back(std::move(next));
            }
        }
    }
    verdict.solvable = false;
    return verdict;
}

}  // namespace reconcile
