/*
 * Seeded random instance generation for fuzz verification and property
 * tests.
 */
#pragma once

#include <random>

#include "qipsim/problem.hpp"

namespace qipsim {

struct InstanceGenOptions {
    int min_n = 1, max_n = 4;
    int min_d = 2, max_d = 4;
    int min_m = 0, max_m = 3;
    int coeff_min = -3, coeff_max = 3;  // constraint coefficients
    int bound_min = 1, bound_max = 6;
    int max_terms = 3;
    int max_degree = 3;
    bool nonneg_cost = true;      // keep C(y) >= 0 over the whole box
    bool injective_cost = false;  // cost = scale * base-d valuation (all costs distinct)
    bool mixed_relations = true;  // draw from {<, <=, >, >=}, else < only
};

RawProblem random_instance(std::mt19937_64& rng, const InstanceGenOptions& opt = {});

}  // namespace qipsim
