#include "qipsim/amplification.hpp"

#include <cmath>
#include <numbers>

#include "qipsim/distillation.hpp"

namespace qipsim {

HybridState mark_target(HybridState s, Exec exec) {
    kernels::negate_strided(s.amplitudes, s.layout.all_ones_pattern(), s.layout.qubit_dim, exec);
    return s;
}

HybridState diffuse(HybridState s, const HybridState& ref, Exec exec) {
    if (s.amplitudes.size() != ref.amplitudes.size())
        throw std::invalid_argument("diffuse: state and reference dimensions differ");
    kernels::reflect_about(s.amplitudes, ref.amplitudes, exec);
    return s;
}

int optimal_iterations(double p_target) {
    if (!(p_target > 0.0) || p_target > 1.0)
        throw std::domain_error("target probability must lie in (0, 1]");
    const double theta = std::asin(std::sqrt(p_target));
    const int p = static_cast<int>(std::lround(std::numbers::pi / (4.0 * theta) - 0.5));
    return std::max(p, 0);
}

AmplifyResult amplify(const HybridState& psi3, Exec exec) {
    AmplifyResult res;
    res.initial_probability =
        qubit_pattern_probability(psi3, psi3.layout.all_ones_pattern(), exec);
    if (res.initial_probability <= kPostselectTol)
        throw UndecidableError("all-ones pattern mass below tolerance: feasible region empty");
    res.iterations = optimal_iterations(std::min(res.initial_probability, 1.0));
    HybridState s = psi3;
    for (int it = 0; it < res.iterations; ++it)
        s = diffuse(mark_target(std::move(s), exec), psi3, exec);
    res.final_probability = qubit_pattern_probability(s, s.layout.all_ones_pattern(), exec);
    res.state = std::move(s);
    return res;
}

UndecidabilityDiagnosis detect_undecidable(const HybridState& psi3, double tol, Exec exec) {
    UndecidabilityDiagnosis diag;
    diag.gamma_mass = gamma_histogram(psi3, exec);
    const int m = psi3.layout.m;
    diag.undecidable = diag.gamma_mass[m] <= tol;
    diag.gamma_max = 0;
    for (int g = m; g >= 0; --g) {
        if (diag.gamma_mass[g] > tol) {
            diag.gamma_max = g;
            break;
        }
    }
    diag.suggested_relaxation = m - diag.gamma_max;
    return diag;
}

}  // namespace qipsim
