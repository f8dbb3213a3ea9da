// Acceptance suite: each criterion runs the full experiment behind it and
// reports one pass/fail line. Tolerances live in the library, next to the
// experiments, so the CLI `reproduce-all` and this binary agree exactly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "isslab/scenario.hpp"

#include <iostream>

namespace {

void run_criterion(const std::string& id) {
    auto rows = isslab::run_acceptance(1, id);
    REQUIRE(rows.size() == 1);
    const auto& r = rows.front();
    std::cout << "criterion " << r.id << (r.pass ? " PASS " : " FAIL ") << r.description
              << " | expected " << r.expected << " | measured " << r.measured
              << " | tolerance " << r.tolerance << "\n";
    CHECK_MESSAGE(r.pass, r.description, ": expected ", r.expected, ", measured ", r.measured,
                  " (tolerance ", r.tolerance, ")");
}

}  // namespace

TEST_CASE("criterion 1") { run_criterion("1"); }
TEST_CASE("criterion 2") { run_criterion("2"); }
TEST_CASE("criterion 3") { run_criterion("3"); }
TEST_CASE("criterion 4") { run_criterion("4"); }
TEST_CASE("criterion 5") { run_criterion("5"); }
TEST_CASE("criterion 6") { run_criterion("6"); }
TEST_CASE("criterion 7") { run_criterion("7"); }
TEST_CASE("criterion 8") { run_criterion("8"); }
TEST_CASE("criterion 9") { run_criterion("9"); }
TEST_CASE("criterion 10") { run_criterion("10"); }
