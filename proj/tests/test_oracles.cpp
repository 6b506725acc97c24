#include <doctest.h>

#include <random>

#include "qipsim/oracles.hpp"
#include "qipsim/problem_gen.hpp"
#include "test_instances.hpp"

using namespace qipsim;

TEST_CASE("brute force solves the demo instance") {
    IpProblem p = testutil::demo_problem();
    BruteForceResult res = brute_force_solve(p);
    CHECK(res.evaluations == 243);
    CHECK(res.feasible == std::vector<std::uint64_t>{0, 1, 2, 27, 28, 29});
    REQUIRE(res.optima.size() == 1);
    CHECK(res.optima[0] == 29);
    CHECK(res.optimum_cost == doctest::Approx(4.0));
}

TEST_CASE("brute force on an unconstrained linear cost") {
    IpProblem p;
    p.n = 1;
    p.d = 3;
    p.cost = Polynomial(1, {{1.0, {1}}});
    BruteForceResult res = brute_force_solve(p);
    CHECK(res.feasible.size() == 3);
    CHECK(res.optima == std::vector<std::uint64_t>{2});
    CHECK(res.optimum_cost == doctest::Approx(2.0));
}

TEST_CASE("brute force reports contradictory instances as empty") {
    IpProblem p = normalize_problem(testutil::contradictory_raw()).problem;
    BruteForceResult res = brute_force_solve(p);
    CHECK(res.empty());
    CHECK(res.evaluations == 3);
}

TEST_CASE("brute force respects the enumeration cap") {
    IpProblem p;
    p.n = 10;
    p.d = 4;
    p.cost = Polynomial(10, {});
    CHECK_THROWS_AS(brute_force_solve(p, 1000), CapExceededError);
}

TEST_CASE("branch and bound agrees with brute force on the demo instance") {
    IpProblem p = testutil::demo_problem();
    BranchBoundResult res = branch_and_bound_solve(p);
    CHECK(res.feasible);
    CHECK(res.optimum_cost == doctest::Approx(4.0));
    CHECK(res.optimum_assignment == std::vector<int>{0, 1, 0, 0, 2});
    CHECK(res.node_count > 0);
    CHECK(res.has_incumbent);
    CHECK(res.first_incumbent_cost <= res.optimum_cost);
}

TEST_CASE("branch and bound finds the upper box corner for linear costs") {
    IpProblem p;
    p.n = 3;
    p.d = 4;
    p.cost = Polynomial(3, {{1.0, {1, 0, 0}}, {2.0, {0, 1, 0}}, {1.0, {0, 0, 1}}});
    BranchBoundResult res = branch_and_bound_solve(p);
    CHECK(res.optimum_assignment == std::vector<int>{3, 3, 3});
    CHECK(res.optimum_cost == doctest::Approx(12.0));
}

TEST_CASE("the two oracles agree on random instances") {
    std::mt19937_64 rng(83);
    InstanceGenOptions opt;  // n <= 4, d <= 4, m <= 3
    opt.nonneg_cost = false;
    for (int trial = 0; trial < 500; ++trial) {
        IpProblem p = normalize_problem(random_instance(rng, opt)).problem;
        BruteForceResult brute = brute_force_solve(p);
        BranchBoundResult bnb = branch_and_bound_solve(p);
        CHECK(bnb.feasible == !brute.empty());
        if (!brute.empty()) {
            CHECK(bnb.optimum_cost == doctest::Approx(brute.optimum_cost).epsilon(1e-12));
            CHECK(bnb.first_incumbent_cost <= bnb.optimum_cost + 1e-12);
        }
        CHECK(brute.evaluations == p.state_count());
    }
}
