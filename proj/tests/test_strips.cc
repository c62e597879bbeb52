#include "doctest.h"

#include "fixture.h"
#include "oracles.h"

#include "reconcile/error.h"
#include "reconcile/strips.h"

using namespace reconcile;

TEST_CASE("fluent sets behave like bitsets") {
    FluentSet s(130);
    s.insert(0);
    s.insert(64);
    s.insert(129);
    CHECK(s.count() == 3);
    CHECK(s.members() == std::vector<int>{0, 64, 129});
    FluentSet t = s;
    t.erase(64);
    CHECK(t.count() == 2);
    CHECK(t.is_subset_of(s));
    CHECK_FALSE(s.is_subset_of(t));
    CHECK(s != t);
}

TEST_CASE("apply follows (s minus del) union add") {
    auto [robot, human, manifest] = fixture::models();
    const int small = robot.action_index(fixture::kSmall);
    State after = *apply(robot, robot.init(), small);
    CHECK(after.contains(*robot.find_fluent("ENGINES_AT_BYENG")));
    CHECK_FALSE(after.contains(*robot.find_fluent("NO_ENGINES_DEPLOYED")));
    CHECK_FALSE(apply(robot, after, robot.action_index(fixture::kBig)).has_value());

    // the human model keeps NO_ENGINES_DEPLOYED
    State h = *apply(human, human.init(), small);
    CHECK(h.contains(*human.find_fluent("NO_ENGINES_DEPLOYED")));
}

TEST_CASE("execute reports the first failing step") {
    auto [robot, human, manifest] = fixture::models();
    auto steps = fixture::pi_prime().observations;
    Execution r = execute(robot, steps);
    CHECK_FALSE(r.feasible);
    CHECK(r.failed_step == 1);
    Execution h = execute(human, steps);
    CHECK(h.feasible);
    CHECK(h.cost == Rational(10));
}

TEST_CASE("validate_goal classifies plans") {
    auto [robot, human, manifest] = fixture::models();
    Validation v = validate_goal(robot, fixture::optimal_steps());
    CHECK(v.status == PlanStatus::Valid);
    CHECK(v.cost == Rational(7));
    std::vector<std::string> prefix = fixture::optimal_steps();
    prefix.resize(3);
    CHECK(validate_goal(robot, prefix).status == PlanStatus::ExecutableNotGoal);
    CHECK(validate_goal(robot, fixture::pi_prime().observations).status == PlanStatus::Infeasible);
    CHECK(std::string(to_string(PlanStatus::Valid)) == "VALID");
}

TEST_CASE("unknown action names are rejected") {
    auto [robot, human, manifest] = fixture::models();
    std::vector<std::string> steps{"FLY_AWAY"};
    try {
        execute(robot, steps);
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == "UnknownAction");
    }
}

TEST_CASE("execute agrees with the bitmask oracle") {
    oracle::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        oracle::Task t = oracle::random_task(rng, {});
        Model m = oracle::to_model(t);
        std::vector<std::string> steps;
        for (int a : oracle::random_foil(rng, t, 6))
            steps.push_back(t.acts[a].name);
        Execution mine = execute(m, steps);
        oracle::Run want = oracle::execute(t, steps);
        REQUIRE(mine.feasible == want.executable);
        if (want.executable) {
            CHECK(oracle::to_mask(m, mine.final_state) == want.state);
            CHECK(mine.cost * Rational(2) == Rational(want.cost2));
        } else {
            CHECK(mine.failed_step == want.failed_step);
        }
    }
}
