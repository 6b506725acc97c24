/*
 * Closed-form success probabilities, error bounds, the phase-resolvability
 * condition, repetition counts, and the step-wise complexity models. All
 * model values use unit hidden constants and base-2 logarithms; outputs are
 * model units, never seconds.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qipsim/common.hpp"

namespace qipsim {

struct ComplexityParams {
    int n = 1;
    int m = 1;
    int d = 2;
    double eps_qpe = 0.1;
    double eps_u = 0.1;
    double eps_g = 0.1;
    double eps_r = 0.1;
    int l = 4;
    std::uint64_t n_feasible = 1;  // worst case: single feasible state
};

struct ErrorBudget {
    double delta_qpe = 0.0;  // accuracy error
    double eps_qpe = 0.0;    // precision
};

// p = (1/N) (1 - (1 + C*)^-2), the ideal-phase success probability.
double ideal_success_probability(std::uint64_t n_feasible, double c_star);

struct ProbabilityBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// Bracketing bounds under QPE accuracy error delta; throws ProblemError when
// 1 + C* - C_ub * delta is not positive.
ProbabilityBounds success_probability_bounds(std::uint64_t n_feasible, double c_star,
                                             double c_ub, double delta_qpe);
ProbabilityBounds success_probability_bounds(std::uint64_t n_feasible, double c_star,
                                             double c_ub, const ErrorBudget& budget);

struct ResolutionCheck {
    bool resolvable = false;
    double margin = 0.0;  // (C_E* - C_dagger) - (eps * C_ub + 2 C_ub delta)
};

// Can the optimal and the nearest sub-optimal cost be told apart at the
// given QPE precision and accuracy?
ResolutionCheck resolvable(double c_e_star, double c_dagger, double c_ub, double eps_qpe,
                           double delta_qpe);
ResolutionCheck resolvable(double c_e_star, double c_dagger, double c_ub,
                           const ErrorBudget& budget);

struct RepetitionEstimate {
    std::uint64_t count = 0;
    bool finite = true;
    bool boundary = false;  // p was exactly 0 or 1
};

// ceil(log(1-P) / log(1-p)) repetitions for at least one success with
// probability P.
RepetitionEstimate repetitions(double p, double p_target);

// Per-attempt success probability needed to hit target P in r attempts.
double required_success_probability(double p_target, std::uint64_t r);

struct TimeModelRow {
    std::string step;
    double value = 0.0;    // full formula, precision factors included
    double leading = 0.0;  // contribution to the leading-order total
};

struct QuantumTimeModel {
    std::vector<TimeModelRow> rows;
    double leading_total = 0.0;  // m n^2 log2 d + d^(n/2)/sqrt(N) + n/eps_qpe
};

QuantumTimeModel quantum_time_model(const ComplexityParams& params);

struct ClassicalModels {
    double brute_force = 0.0;     // d^n, unit evaluation cost
    double reis_rothvoss = 0.0;   // (log2 n)^(3n)
    bool degenerate_log = false;  // n == 2 makes the log form collapse to 1
};

ClassicalModels classical_time_models(const ComplexityParams& params);

}  // namespace qipsim
