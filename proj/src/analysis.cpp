#include "qipsim/analysis.hpp"

#include <cmath>
#include <limits>

namespace qipsim {

double ideal_success_probability(std::uint64_t n_feasible, double c_star) {
    if (n_feasible < 1) throw ProblemError("feasible-region size must be >= 1");
    if (c_star < 0.0) throw ProblemError("optimal cost must be non-negative");
    double inv = 1.0 / (1.0 + c_star);
    return (1.0 - inv * inv) / double(n_feasible);
}

ProbabilityBounds success_probability_bounds(std::uint64_t n_feasible, double c_star,
                                             double c_ub, double delta_qpe) {
    double shift = c_ub * delta_qpe;
    double lo_den = 1.0 + c_star - shift;
    if (!(lo_den > 0.0))
        throw ProblemError("delta_QPE too large: 1 + C* - C_ub*delta must stay positive");
    double hi_den = 1.0 + c_star + shift;
    ProbabilityBounds b;
    b.lower = (1.0 - 1.0 / (lo_den * lo_den)) / double(n_feasible);
    b.upper = (1.0 - 1.0 / (hi_den * hi_den)) / double(n_feasible);
    return b;
}

ResolutionCheck resolvable(double c_e_star, double c_dagger, double c_ub, double eps_qpe,
                           double delta_qpe) {
    ResolutionCheck r;
    double lhs = c_e_star - c_dagger;
    double rhs = eps_qpe * c_ub + 2.0 * c_ub * delta_qpe;
    r.margin = lhs - rhs;
    r.resolvable = lhs > rhs;
    return r;
}

ProbabilityBounds success_probability_bounds(std::uint64_t n_feasible, double c_star,
                                             double c_ub, const ErrorBudget& budget) {
    return success_probability_bounds(n_feasible, c_star, c_ub, budget.delta_qpe);
}

ResolutionCheck resolvable(double c_e_star, double c_dagger, double c_ub,
                           const ErrorBudget& budget) {
    return resolvable(c_e_star, c_dagger, c_ub, budget.eps_qpe, budget.delta_qpe);
}

RepetitionEstimate repetitions(double p, double p_target) {
    if (p < 0.0 || p > 1.0 || !(p_target > 0.0) || !(p_target < 1.0))
        throw std::domain_error("repetitions: need p in [0,1] and P_target in (0,1)");
    RepetitionEstimate r;
    if (p == 0.0) {
        r.finite = false;
        r.boundary = true;
        r.count = std::numeric_limits<std::uint64_t>::max();
        return r;
    }
    if (p == 1.0) {
        r.boundary = true;
        r.count = 1;
        return r;
    }
    r.count = static_cast<std::uint64_t>(std::ceil(std::log1p(-p_target) / std::log1p(-p)));
    return r;
}

double required_success_probability(double p_target, std::uint64_t r) {
    if (!(p_target > 0.0) || !(p_target < 1.0) || r < 1)
        throw std::domain_error("required_success_probability: bad arguments");
    return 1.0 - std::pow(1.0 - p_target, 1.0 / double(r));
}

QuantumTimeModel quantum_time_model(const ComplexityParams& params) {
    if (params.n < 1 || params.m < 0 || params.d < 2)
        throw ProblemError("invalid problem sizes");
    for (double eps : {params.eps_qpe, params.eps_u, params.eps_g, params.eps_r})
        if (!(eps > 0.0) || !(eps < 1.0))
            throw ProblemError("precision parameters must lie in (0,1)");
    if (params.n_feasible < 1) throw ProblemError("n_feasible must be >= 1");

    const double n = params.n, m = params.m, d = params.d, l = params.l;
    const double grover = std::pow(d, n / 2.0) / std::sqrt(double(params.n_feasible));
    QuantumTimeModel model;
    model.rows = {
        {"init_hadamards", n, 0.0},
        {"entanglers", m * n * n * std::log2(d) * std::log2(1.0 / params.eps_u),
         m * n * n * std::log2(d)},
        {"amplification", grover * std::log2(1.0 / params.eps_g), grover},
        {"mid_circuit_init", l, 0.0},
        {"qpe_phase_encoding", n / params.eps_qpe, n / params.eps_qpe},
        {"inverse_qft", l * l, 0.0},
        {"ancilla_rotation", std::log2(1.0 / params.eps_r), 0.0},
        {"final_measurement", 0.0, 0.0},
    };
    model.leading_total = 0.0;
    for (const auto& row : model.rows) model.leading_total += row.leading;
    return model;
}

ClassicalModels classical_time_models(const ComplexityParams& params) {
    if (params.n < 2) throw ProblemError("classical models need n >= 2");
    ClassicalModels out;
    out.brute_force = std::pow(double(params.d), double(params.n));
    out.reis_rothvoss = std::pow(std::log2(double(params.n)), 3.0 * double(params.n));
    out.degenerate_log = params.n == 2;
    return out;
}

}  // namespace qipsim
