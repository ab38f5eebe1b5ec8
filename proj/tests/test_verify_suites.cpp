#include <catch_amalgamated.hpp>

#include "logbern/verify.hpp"

using namespace logbern;

TEST_CASE("every verification suite passes at mu = 1") {
    for (const auto& name : verify_suite_names()) {
        const auto rep = run_verify_suite(name, MuParam(1.0));
        CHECK(rep.suite == name);
        for (const auto& c : rep.checks) {
            INFO(name << " / " << c.id << ": measured " << c.measured << " " << c.comparator
                      << " " << c.threshold << (c.note.empty() ? "" : " [" + c.note + "]"));
            CHECK(c.passed);
        }
        CHECK(rep.passed);
    }
}

TEST_CASE("warp suite carries the n gamma_n sequence") {
    const auto rep = run_verify_suite("warp", MuParam(1.0));
    bool found = false;
    for (const auto& c : rep.checks)
        if (c.id == "warp.gamma_asymptote") {
            found = true;
            CHECK(c.note.find("n*gamma_n") != std::string::npos);
            CHECK(c.passed);
        }
    CHECK(found);
}

TEST_CASE("suites honor a different mu") {
    const auto rep = run_verify_suite("warp", MuParam(0.2688));
    CHECK(rep.passed);
    CHECK(rep.mu == 0.2688);
}

TEST_CASE("saturation suite narrows to a single pair") {
    const auto rep = run_verify_suite("saturation", MuParam(1.0), "saturation:1:0");
    CHECK(rep.passed); // A ln_mu alone is reproduced: residuals are trivial
    for (const auto& c : rep.checks)
        if (c.id == "analysis.kernel_annihilation")
            CHECK(c.measured <= 1e-12);
}

TEST_CASE("bound suite narrows to a single function") {
    const auto rep = run_verify_suite("bound", MuParam(1.0), "square");
    CHECK(rep.passed);
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].note.find("square@n=16") != std::string::npos);
}

TEST_CASE("unknown suite is rejected") {
    CHECK_THROWS_AS(run_verify_suite("nope", MuParam(1.0)), ParameterError);
}
