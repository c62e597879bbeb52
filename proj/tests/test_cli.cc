#include "doctest.h"

#include "fixture.h"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Output {
    int status = -1;
    std::string out;
};

// stdout and stderr together
Output run(const std::string &args) {
    std::string cmd = std::string(RECONCILE_CLI) + " " + args + " 2>&1";
    Output o;
    FILE *p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        o.out.append(buf.data(), n);
    int raw = pclose(p);
    o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return o;
}

std::string manifest() { return "--manifest " + (fixture::dir() / "manifest.json").string(); }
std::string foil() { return "--foil " + (fixture::dir() / "foil.txt").string(); }

}  // namespace

TEST_CASE("cli plan and validate") {
    Output p = run("plan " + manifest());
    CHECK(p.status == 0);
    CHECK(p.out.find("; cost = 7") != std::string::npos);
    CHECK(p.out.rfind("ASSESS_FIRE_FIRECHIEF_BYENG", 0) == 0);

    Output v = run("validate " + manifest() + " --plan " + (fixture::dir() / "foil.txt").string());
    CHECK(v.status == 0);
    CHECK(v.out.find("INFEASIBLE") != std::string::npos);
}

TEST_CASE("cli explain prints the edit") {
    Output e = run("explain " + manifest() + " " + foil());
    CHECK(e.status == 0);
    CHECK(e.out == "add " + fixture::kSocial + "-has-del-effect-NO_SOCIAL_MEDIA\n");
    Output j = run("explain " + manifest() + " " + foil() + " --format json");
    CHECK(j.status == 0);
    CHECK(nlohmann::json::parse(j.out)["edits"].size() == 1);
}

TEST_CASE("cli subset commands") {
    Output c = run("conflicts " + manifest() + " " + foil());
    CHECK(c.status == 0);
    CHECK(c.out.find("{#1 " + fixture::kSmall + ", #2 " + fixture::kBig + "}") != std::string::npos);
    Output p = run("plausible " + manifest() + " " + foil());
    CHECK(p.status == 0);
    CHECK(p.out.find("{#2 " + fixture::kBig + ", #4 " + fixture::kAddress + "}") != std::string::npos);
    Output cl = run("closest " + manifest() + " " + foil());
    CHECK(cl.status == 0);
    CHECK(cl.out.find("; cost = 7") != std::string::npos);
    CHECK(cl.out.find("; discarded #2 " + fixture::kBig) != std::string::npos);
    Output f = run("foil-check " + manifest() + " " + foil());
    CHECK(f.out.find("robot model: infeasible") != std::string::npos);
}

TEST_CASE("cli replays the recorded dialogue") {
    Output r = run("replay --transcript " + (fixture::dir() / "dialogue.json").string());
    CHECK(r.status == 0);
    CHECK(r.out.find("0 differences") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    Output missing = run("plan --manifest /nonexistent/manifest.json");
    CHECK(missing.status == 1);
    CHECK(nlohmann::json::parse(missing.out)["code"] == "FileNotFound");
    CHECK(run("plan --bogus").status == 2);
    CHECK(run("").status == 2);
    CHECK(run("explain " + manifest()).status == 2);
}
