#include "doctest.h"

#include "fixture.h"
#include "oracles.h"

#include "reconcile/foil.h"
#include "reconcile/planner.h"

using namespace reconcile;

TEST_CASE("optimal plan on the fixture") {
    auto [robot, human, manifest] = fixture::models();
    SearchResult r = solve_optimal(robot);
    REQUIRE(r.outcome == SearchOutcome::Plan);
    CHECK(*r.plan.cost == Rational(7));
    CHECK(r.plan.steps == fixture::optimal_steps());
    CHECK(validate_goal(robot, r.plan.steps).status == PlanStatus::Valid);
    CHECK(*optimal_cost(human) == Rational(7));
}

TEST_CASE("search budgets surface as ResourceLimit") {
    auto [robot, human, manifest] = fixture::models();
    SearchLimits tight;
    tight.max_generated = 2;
    SearchResult r = solve_optimal(robot, tight);
    CHECK(r.outcome == SearchOutcome::ResourceLimit);
    CHECK_FALSE(r.limit_reason.empty());

    std::stop_source stop;
    stop.request_stop();
    SearchLimits stopped;
    stopped.stop = stop.get_token();
    CHECK(solve_optimal(robot, stopped).outcome == SearchOutcome::ResourceLimit);
}

TEST_CASE("h^m on the hard compilation of the foil") {
    auto [robot, human, manifest] = fixture::models();
    Model hard = compile(robot, fixture::pi_prime(), CompileMode::Hard).compiled;
    // the conflicts are delete interactions, invisible to h^1
    CHECK_FALSE(hm_unsolvable(hard, 1));
    CHECK(hm_unsolvable(hard, 2));
    CHECK(hm_unsolvable(hard, 3));
    SolvabilityVerdict v = decide_solvability(hard);
    CHECK_FALSE(v.solvable);
    CHECK(v.decided_by_m == 2);

    Model human_hard = compile(human, fixture::pi_prime(), CompileMode::Hard).compiled;
    CHECK_FALSE(hm_unsolvable(human_hard, 2));
    CHECK(decide_solvable(human_hard));
}

TEST_CASE("h^1 catches goals that are not even relaxed-reachable") {
    oracle::Task t;
    t.n = 2;
    t.acts.push_back({"A00", 0b01, 0b01, 0, 2});
    t.goal = 0b10;
    Model m = oracle::to_model(t);
    CHECK(hm_unsolvable(m, 1));
    CHECK(solve_optimal(m).outcome == SearchOutcome::Unsolvable);
    CHECK(decide_solvability(m).decided_by_m == 1);
}

TEST_CASE("ties break toward earlier generated nodes") {
    // two identical one-step plans; the first action wins every time
    oracle::Task t;
    t.n = 1;
    t.acts.push_back({"A00", 0, 1, 0, 2});
    t.acts.push_back({"A01", 0, 1, 0, 2});
    t.goal = 1;
    Model m = oracle::to_model(t);
    for (int i = 0; i < 3; ++i)
        CHECK(solve_optimal(m).plan.steps == std::vector<std::string>{"A00"});
}

TEST_CASE("penalty-first search prefers fewer penalised actions") {
    oracle::Task t;
    t.n = 1;
    t.acts.push_back({"A00", 0, 1, 0, 2});
    t.acts.push_back({"A01", 0, 1, 0, 12});
    t.goal = 1;
    Model m = oracle::to_model(t);
    std::vector<std::uint32_t> penalty{1, 0};
    SearchResult r = solve_min_penalty(m, penalty);
    REQUIRE(r.outcome == SearchOutcome::Plan);
    CHECK(r.plan.steps == std::vector<std::string>{"A01"});
    CHECK(r.penalty == 0);
    CHECK(*r.plan.cost == Rational(6));
}
