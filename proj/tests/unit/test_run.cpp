#include "doctest.h"

#include "twist/run.hpp"

using namespace tw;

TEST_CASE("config validation") {
    RunConfig c;
    auto v = validate(c);
    CHECK(v.suites == std::vector<std::string>{"identities", "schemes", "modules", "incidence", "sequences"});
    c.mode = "symbolic";
    CHECK(validate(c).suites == std::vector<std::string>{"identities", "modules"});
    c.suites = {"schemes"};
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = RunConfig{};
    c.suites = {"nope"};
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = RunConfig{};
    c.primes = {15};
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = RunConfig{};
    c.primes.clear();
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = RunConfig{};
    c.cutoff = 5;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c.suites = {"modules"};
    CHECK_NOTHROW(validate(c));
    c.jobs = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("primes without a split tuple are replaced") {
    auto r = resolve_primes({13, 17, 29}, 1);
    REQUIRE(r.size() == 3);
    CHECK(r[0].used == 29);
    CHECK(r[1].used == 37);
    CHECK(r[2].used > 37);
}

TEST_CASE("symbolic run is deterministic and passes") {
    RunConfig c;
    c.mode = "symbolic";
    c.suites = {"modules"};
    auto a = run(c), b = run(c);
    CHECK(a.pass());
    CHECK(a.json().dump() == b.json().dump());
    CHECK(a.json()["summary"]["errata"] == 3);
    CHECK(a.markdown().find("| modules | symbolic |") != std::string::npos);
}

TEST_CASE("a failing check fails the suite and the run") {
    RunReport r;
    SuiteResult s{"identities", "symbolic", {}};
    AuditReport a{"demo", {}};
    a.add("ok", true);
    s.audits.push_back(a);
    r.suites.push_back(s);
    CHECK(r.pass());
    r.suites[0].audits[0].add("broken", false);
    CHECK_FALSE(r.pass());
    CHECK(r.json()["summary"]["failed"] == 1);
    CHECK(r.markdown().find("demo.broken") != std::string::npos);
}
