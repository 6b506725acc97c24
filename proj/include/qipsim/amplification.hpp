/*
 * Grover-style amplification of the all-ones qubit pattern: phase-flip of
 * the target pattern, exact reflection about |psi_3>, optimal iteration
 * count, and the empty-feasible-region diagnosis.
 */
#pragma once

#include <vector>

#include "qipsim/hybrid_state.hpp"

namespace qipsim {

// Negate the amplitudes carrying the all-ones qubit pattern.
HybridState mark_target(HybridState s, Exec exec = Exec::parallel);

// s -> 2 ref <ref|s> - s.
HybridState diffuse(HybridState s, const HybridState& ref, Exec exec = Exec::parallel);

// round(pi / (4 asin(sqrt(P))) - 1/2), floored at 0.
int optimal_iterations(double p_target);

struct AmplifyResult {
    HybridState state;
    int iterations = 0;
    double initial_probability = 0.0;
    double final_probability = 0.0;
};

// (diffuse . mark_target)^p_opt about the supplied |psi_3>. Throws
// UndecidableError when the target-pattern mass is below kPostselectTol.
AmplifyResult amplify(const HybridState& psi3, Exec exec = Exec::parallel);

struct UndecidabilityDiagnosis {
    bool undecidable = false;
    int gamma_max = 0;                 // largest gamma with mass above tol
    std::vector<double> gamma_mass;    // per gamma = 0..m
    int suggested_relaxation = 0;      // m - gamma_max
};

UndecidabilityDiagnosis detect_undecidable(const HybridState& psi3,
                                           double tol = kPostselectTol,
                                           Exec exec = Exec::parallel);

}  // namespace qipsim
