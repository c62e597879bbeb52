#include "doctest.h"

#include "fixture.h"
#include "oracles.h"

#include "reconcile/error.h"
#include "reconcile/model_space.h"
#include "reconcile/planner.h"

using namespace reconcile;

namespace {

const std::string kSocialDel = "add " + fixture::kSocial + "-has-del-effect-NO_SOCIAL_MEDIA";
const std::string kSmallDel = "add " + fixture::kSmall + "-has-del-effect-NO_ENGINES_DEPLOYED";

}  // namespace

TEST_CASE("gamma counts every parameter of the fixture") {
    auto [robot, human, manifest] = fixture::models();
    // counted from the PDDL by hand: 7 init, 2 goal, 9 costs,
    // 15 preconditions, 10 add effects, 3 delete effects
    CHECK(gamma(robot).size() == 46);
    CHECK(gamma(human).size() == 44);
}

TEST_CASE("model difference is sorted and renders both deletes") {
    auto [robot, human, manifest] = fixture::models();
    EditSet d = model_difference(human, robot);
    REQUIRE(d.size() == 2);
    CHECK(d[0].render() == kSmallDel);
    CHECK(d[1].render() == kSocialDel);
    CHECK(render(d) == kSmallDel + "\n" + kSocialDel + "\n");
    CHECK(model_difference(robot, robot).empty());

    Model updated = apply_edits(human, robot, d);
    CHECK(model_difference(updated, robot).empty());
    EditSet back = invert_edits(human, robot, d);
    CHECK(model_difference(apply_edits(robot, human, back), human).empty());
}

TEST_CASE("contrastive explanation for the foil") {
    auto [robot, human, manifest] = fixture::models();
    ExplanationResult r = contrastive_search(robot, human, {fixture::pi_prime()});
    REQUIRE(r.edits.size() == 1);
    CHECK(r.edits[0].render() == kSocialDel);
    CHECK(r.edits[0].parameter.kind == ParamKind::DelEffOf);
    Model updated = apply_edits(human, robot, r.edits);
    CHECK_FALSE(foil_feasible(updated, fixture::pi_prime()));
}

TEST_CASE("two foils need both edits") {
    auto [robot, human, manifest] = fixture::models();
    // small then big is only blocked by the engine delete; the other foil
    // by the social media delete
    Foil engines{{fixture::kSmall, fixture::kBig}};
    Foil media{{fixture::kSocial, fixture::kAddress}};
    CHECK(contrastive_search(robot, human, {engines}).edits.size() == 2);
    ExplanationResult r = contrastive_search(robot, human, {media, fixture::pi_prime()});
    CHECK(r.edits.size() == 1);
    CHECK(contrastive_search(robot, human, {media, engines}).edits.size() == 2);
}

TEST_CASE("contrastive search refuses foils the robot accepts") {
    auto [robot, human, manifest] = fixture::models();
    try {
        contrastive_search(robot, human, {Foil{{fixture::kBig}}});
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == "FoilFeasibleInRobot");
    }
}

TEST_CASE("MCE is empty when the plan is already optimal for the human") {
    auto [robot, human, manifest] = fixture::models();
    SearchResult pi = solve_optimal(robot);
    CHECK(mce_search(robot, human, pi.plan).edits.empty());
}

TEST_CASE("cost differences are single edits") {
    oracle::Task r;
    r.n = 1;
    r.acts.push_back({"A00", 0, 1, 0, 2});
    r.acts.push_back({"A01", 0, 1, 0, 6});
    r.goal = 1;
    oracle::Task h = r;
    h.acts[0].cost2 = 8;  // human thinks A00 costs 4
    Model R = oracle::to_model(r), H = oracle::to_model(h, ModelTag::Human);
    EditSet d = model_difference(H, R);
    REQUIRE(d.size() == 1);
    CHECK(d[0].render() == "add A00-has-cost-1");
    SearchResult pi = solve_optimal(R);
    ExplanationResult mce = mce_search(R, H, pi.plan);
    REQUIRE(mce.edits.size() == 1);
    CHECK(*optimal_cost(apply_edits(H, R, mce.edits)) == Rational(1));
}

TEST_CASE("edits that would overlap add and delete are rejected") {
    oracle::Task r;
    r.n = 2;
    r.acts.push_back({"A00", 0, 0b01, 0b10, 2});
    r.goal = 0b01;
    oracle::Task h = r;
    h.acts[0].add = 0b11;
    h.acts[0].del = 0;
    Model R = oracle::to_model(r), H = oracle::to_model(h, ModelTag::Human);
    EditSet d = model_difference(H, R);
    REQUIRE(d.size() == 2);
    // only the delete: the action would both add and delete P01
    EditSet del_only;
    for (const Edit &e : d)
        if (e.parameter.kind == ParamKind::DelEffOf)
            del_only.push_back(e);
    try {
        apply_edits(H, R, del_only);
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == "IllegalEdit");
    }
}
