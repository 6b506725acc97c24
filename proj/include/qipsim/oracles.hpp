/*
 * Classical ground-truth solvers: exhaustive enumeration, and a depth-first
 * branch-and-bound with an interval-arithmetic cost bound.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "qipsim/problem.hpp"

namespace qipsim {

struct BruteForceResult {
    std::vector<std::uint64_t> feasible;  // ascending basis indices
    std::vector<std::uint64_t> optima;    // all tied maximizers
    double optimum_cost = 0.0;            // valid when !feasible.empty()
    std::uint64_t evaluations = 0;        // exactly d^n

    bool empty() const { return feasible.empty(); }
};

BruteForceResult brute_force_solve(const IpProblem& p,
                                   std::uint64_t cap = kDefaultEnumCap,
                                   Exec exec = Exec::parallel);

struct BranchBoundResult {
    bool feasible = false;
    std::vector<int> optimum_assignment;
    double optimum_cost = 0.0;
    std::uint64_t node_count = 0;       // visited nodes; not comparable across solvers
    double first_incumbent_cost = 0.0;  // cost of the first feasible leaf found
    bool has_incumbent = false;
};

// Fixes variables in index order, values ascending; prunes on the interval
// bound sum_j |coeff_j * fixed-part_j| * (d-1)^(unfixed degree).
BranchBoundResult branch_and_bound_solve(const IpProblem& p);

}  // namespace qipsim
