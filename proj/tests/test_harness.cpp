#include <doctest.h>

#include "qbraid/harness.hpp"

using namespace qbraid;

TEST_SUITE("harness") {
    TEST_CASE("config validation") {
        RunConfig c;
        CHECK_NOTHROW(validate(c));
        c.grid_n = 63;
        CHECK_THROWS_AS(validate(c), ConfigError);
        c.grid_n = 2048;
        CHECK_THROWS_AS(validate(c), ConfigError);
        c = RunConfig{};
        c.sign = 0;
        CHECK_THROWS_AS(validate(c), ConfigError);
        c = RunConfig{};
        c.suites = {"nope"};
        CHECK_THROWS_AS(validate(c), ConfigError);
        c = RunConfig{};
        c.report_format = "xml";
        CHECK_THROWS_AS(validate(c), ConfigError);
        c = RunConfig{};
        c.tol_overrides["not.a.check"] = 1.0;
        CHECK_THROWS_AS(validate(c), ConfigError);
        c = RunConfig{};
        c.tol_overrides["specfun.fh.zero"] = -1.0;
        CHECK_THROWS_AS(validate(c), ConfigError);
    }

    TEST_CASE("registry is consistent") {
        for (const auto& s : check_registry()) {
            CHECK(s.tolerance >= 0.0);
            CHECK(std::find(known_suites().begin(), known_suites().end(), s.suite) != known_suites().end());
            CHECK_FALSE(s.anchor.empty());
        }
    }

    TEST_CASE("report is deterministic and sorted") {
        RunConfig c;
        c.suites = {"specfun"};
        const RunResult a = run_suite(c);
        const RunResult b = run_suite(c);
        CHECK(to_json(c, a) == to_json(c, b));
        CHECK(a.exit_code == 0);
        for (size_t i = 1; i < a.reports.size(); ++i) CHECK(a.reports[i - 1].check_name < a.reports[i].check_name);
        for (const auto& r : a.reports) CHECK(r.runtime_ms == 0.0);
    }

    TEST_CASE("tolerance override flips the exit code") {
        RunConfig c;
        c.suites = {"specfun"};
        c.tol_overrides["specfun.reflection.upper"] = 1e-30;
        const RunResult r = run_suite(c);
        CHECK(r.exit_code == 1);
        c.report_format = "text";
        CHECK(render(c, r).find("FAIL") != std::string::npos);
    }
}
