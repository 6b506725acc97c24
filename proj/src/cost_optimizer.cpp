#include "qipsim/cost_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qipsim {

PhaseTable build_phase_table(const IpProblem& p, std::span<const std::uint64_t> feasible,
                             double c_ub) {
    if (!(c_ub > 0.0)) throw ProblemError("C_ub must be positive");
    PhaseTable table;
    table.c_ub = c_ub;
    for (std::uint64_t y : feasible) {
        std::vector<int> x = decode_index(y, p.n, p.d);
        double cost = p.cost.eval(std::span<const int>(x));
        if (cost < 0.0)
            throw ProblemError("negative cost " + std::to_string(cost) +
                               " on feasible state y=" + std::to_string(y));
        double phase = (cost + 1.0) / c_ub;
        if (!(phase > 0.0) || !(phase < 1.0))
            throw ProblemError("C_ub=" + std::to_string(c_ub) +
                               " does not place phase of y=" + std::to_string(y) +
                               " inside (0,1)");
        table.entries.push_back({y, cost, phase});
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const auto& a, const auto& b) { return a.y < b.y; });
    return table;
}

cxd phase_oracle_check(const PhaseTable& table, std::uint64_t y, std::uint64_t k) {
    for (const auto& e : table.entries)
        if (e.y == y) return std::polar(1.0, 2.0 * std::numbers::pi * e.phase * double(k));
    throw std::out_of_range("y=" + std::to_string(y) + " not in the phase table");
}

StageTwoState stage_two_init(const HybridState& collapsed,
                             std::span<const std::uint64_t> feasible, int l,
                             std::uint64_t dim_cap) {
    if (collapsed.layout.m != 0)
        throw std::invalid_argument("stage two expects a collapsed qudit-only state");
    if (l < 1 || l > 12) throw std::invalid_argument("QPE register width l must be in 1..12");
    StageTwoState s;
    s.feasible.assign(feasible.begin(), feasible.end());
    s.l = l;
    const std::uint64_t reg = std::uint64_t{1} << l;
    if (s.feasible.empty()) throw std::invalid_argument("empty feasible set");
    if (s.feasible.size() > dim_cap / (reg * 2))
        throw CapExceededError("stage-II dimension exceeds the amplitude cap");
    s.amplitudes.assign(s.feasible.size() * reg * 2, cxd{0.0, 0.0});
    const double scale = 1.0 / std::sqrt(double(reg));
    for (std::size_t slot = 0; slot < s.feasible.size(); ++slot) {
        const cxd amp = collapsed.amplitudes.at(s.feasible[slot]) * scale;
        for (std::uint64_t k = 0; k < reg; ++k) s.amplitudes[s.index(slot, k, 0)] = amp;
    }
    return s;
}

StageTwoState qpe(StageTwoState s, const PhaseTable& table, Exec exec) {
    if (table.entries.size() != s.feasible.size())
        throw std::invalid_argument("phase table does not cover the feasible slots");
    std::vector<double> phases(s.feasible.size());
    for (std::size_t slot = 0; slot < s.feasible.size(); ++slot) {
        if (table.entries[slot].y != s.feasible[slot])
            throw std::invalid_argument("phase table and state disagree on feasible indices");
        phases[slot] = table.entries[slot].phase;
    }
    kernels::phase_ramp(s.amplitudes, phases, s.l, exec);
    kernels::qft_axis(s.amplitudes, s.slots(), s.l, /*inverse=*/true, exec);
    return s;
}

StageTwoState controlled_rotation(StageTwoState s, double c_ub, Exec exec,
                                  double* excluded_mass) {
    const std::uint64_t reg = std::uint64_t{1} << s.l;
    std::vector<double> r0(reg), r1(reg);
    std::vector<std::uint8_t> excluded(reg, 0);
    for (std::uint64_t j = 0; j < reg; ++j) {
        const double scaled = c_ub * double(j) / double(reg);  // C_ub * phi_est
        if (j == 0 || scaled < 1.0) {
            r0[j] = 0.0;
            r1[j] = 1.0;
            excluded[j] = 1;
        } else {
            r1[j] = 1.0 / scaled;
            r0[j] = std::sqrt(1.0 - r1[j] * r1[j]);
        }
    }
    if (excluded_mass) {
        double mass = 0.0;
        for (std::size_t slot = 0; slot < s.slots(); ++slot)
            for (std::uint64_t j = 0; j < reg; ++j)
                if (excluded[j]) mass += std::norm(s.amplitudes[s.index(slot, j, 0)]);
        *excluded_mass = mass;
    }
    kernels::ancilla_rotation(s.amplitudes, r0, r1, s.l, exec);
    return s;
}

AncillaPostselection postselect_ancilla_zero(const StageTwoState& s, Exec exec) {
    AncillaPostselection out;
    out.p0 = kernels::strided_prob(s.amplitudes, 0, 2, exec);
    if (out.p0 <= kPostselectTol)
        throw DegenerateObjectiveError(
            "ancilla never lands in |0>: every feasible cost is zero");
    const std::size_t cells = s.amplitudes.size() / 2;
    out.joint.resize(cells);
    for (std::size_t c = 0; c < cells; ++c)
        out.joint[c] = std::norm(s.amplitudes[2 * c]) / out.p0;
    return out;
}

ExactPhaseResult exact_phase_distribution(const PhaseTable& table,
                                          std::span<const cxd> slot_amplitudes) {
    if (table.entries.size() != slot_amplitudes.size())
        throw std::invalid_argument("slot amplitudes do not match the phase table");
    ExactPhaseResult res;
    res.conditional.resize(table.entries.size());
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        const double c = table.entries[i].cost;
        const double inv = 1.0 / (1.0 + c);
        res.conditional[i] = std::norm(slot_amplitudes[i]) * (1.0 - inv * inv);
        res.p0 += res.conditional[i];
    }
    if (res.p0 <= kPostselectTol)
        throw DegenerateObjectiveError(
            "ancilla never lands in |0>: every feasible cost is zero");
    for (double& v : res.conditional) v /= res.p0;
    return res;
}

int recommended_register_width(double c_ub) {
    int l = 1;
    while (l < 12 && double(std::uint64_t{1} << l) < 2.0 * c_ub) ++l;
    return l;
}

SolveParams verification_params(const IpProblem& p, std::span<const double> feasible_costs) {
    SolveParams params;
    const double guaranteed = cost_upper_bound(p, CubMode::guaranteed).value;
    int width = 1;
    while (width < 12 && double(std::uint64_t{1} << width) < guaranteed) ++width;
    if (double(std::uint64_t{1} << width) < guaranteed) {
        // bound too large for an exact-phase register; run at full width
        params.cub_mode = CubMode::guaranteed;
        params.l = 12;
        return params;
    }
    params.cub_mode = CubMode::override_value;
    params.cub_override = double(std::uint64_t{1} << width);

    int frac_bits = 0;
    for (double c : feasible_costs) {
        int k = 0;
        double scaled = c + 1.0;
        while (k < 12 && scaled != std::floor(scaled)) {
            scaled *= 2.0;
            ++k;
        }
        frac_bits = std::max(frac_bits, k);
    }
    params.l = std::min(width + frac_bits, 12);
    return params;
}

namespace {

// Literal repeat-until-|0> measurement loop over |psi_9|^2.
std::map<std::uint64_t, std::uint64_t> resample_loop(const StageTwoState& s,
                                                     std::uint64_t shots, std::uint64_t seed,
                                                     std::uint64_t& attempts) {
    std::vector<double> probs(s.amplitudes.size());
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = std::norm(s.amplitudes[i]);
    std::vector<double> cdf(probs.size());
    double cum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) cdf[i] = (cum += probs[i]);
    std::mt19937_64 rng(seed);
    std::map<std::uint64_t, std::uint64_t> hist;
    attempts = 0;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        for (;;) {
            ++attempts;
            double u = double(rng() >> 11) * 0x1.0p-53 * cum;
            // first cell with cdf > u; boundary draws cannot land on
            // zero-probability cells this way
            std::size_t idx = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
            if (idx >= probs.size()) idx = probs.size() - 1;
            if ((idx & 1) == 0) {  // ancilla |0>
                ++hist[idx / 2];
                break;
            }
        }
    }
    return hist;
}

}  // namespace

SolveReport solve(const IpProblem& p, const SolveParams& params) {
    SolveReport rep;
    rep.n = p.n;
    rep.d = p.d;
    rep.m = p.m();
    rep.l = params.l;
    rep.shots = params.shots;
    rep.seed = params.seed;
    rep.exact_readout = params.shots == 0;
    rep.target_success = params.target_success;
    const Exec exec = params.exec;
    const std::uint64_t cap = params.dim_cap ? params.dim_cap : dim_cap_from_env();

    // Stage I
    RegisterLayout layout(p.n, p.d, p.m(), cap);
    HybridState state = apply_hadamard_all_qudits(init_state(layout), exec);
    auto entanglers = build_all_entanglers(p, exec);
    for (const auto& e : entanglers)
        if (e.boundary_warning) rep.boundary_warning_constraints.push_back(e.constraint_index);
    rep.rational_comparisons = std::all_of(entanglers.begin(), entanglers.end(),
                                           [](const auto& e) { return e.rational_path; });
    HybridState psi3 = apply_entanglers_sequential(std::move(state),
                                                   std::span<const EntanglerPermutation>(entanglers),
                                                   exec);
    rep.qubit_pattern_before.resize(layout.qubit_dim);
    for (std::uint64_t q = 0; q < layout.qubit_dim; ++q)
        rep.qubit_pattern_before[q] = qubit_pattern_probability(psi3, q, exec);

    rep.diagnosis = detect_undecidable(psi3, kPostselectTol, exec);
    if (rep.diagnosis.undecidable) {
        rep.status = SolveStatus::undecidable;
        return rep;
    }

    AmplifyResult amp = amplify(psi3, exec);
    rep.target_prob_initial = amp.initial_probability;
    rep.target_prob_final = amp.final_probability;
    rep.grover_iterations = amp.iterations;
    rep.qubit_pattern_after.resize(layout.qubit_dim);
    for (std::uint64_t q = 0; q < layout.qubit_dim; ++q)
        rep.qubit_pattern_after[q] = qubit_pattern_probability(amp.state, q, exec);

    auto [collapsed, prob] = postselect_qubits(amp.state, layout.all_ones_pattern(), exec);
    rep.collapse_probability = prob;

    for (std::uint64_t y = 0; y < layout.qudit_dim; ++y)
        if (std::norm(collapsed.amplitudes[y]) > kPostselectTol) rep.feasible.push_back(y);
    std::vector<cxd> slot_amps;
    for (std::uint64_t y : rep.feasible) {
        rep.feasible_assignments.push_back(decode_index(y, p.n, p.d));
        rep.feasible_costs.push_back(p.cost.eval(std::span<const int>(rep.feasible_assignments.back())));
        slot_amps.push_back(collapsed.amplitudes[y]);
        rep.feasible_before.push_back(std::norm(collapsed.amplitudes[y]));
    }

    // Stage II
    rep.cub = cost_upper_bound(p, params.cub_mode, params.cub_override, rep.feasible_costs);
    PhaseTable table = build_phase_table(p, rep.feasible, rep.cub.value);

    StageTwoState s2 = stage_two_init(collapsed, rep.feasible, params.l, cap);
    s2 = qpe(std::move(s2), table, exec);
    s2 = controlled_rotation(std::move(s2), rep.cub.value, exec, &rep.excluded_branch_mass);
    rep.excluded_branch_warning = rep.excluded_branch_mass > 1e-6;

    AncillaPostselection post;
    ExactPhaseResult ideal;
    try {
        post = postselect_ancilla_zero(s2, exec);
        ideal = exact_phase_distribution(table, slot_amps);
    } catch (const DegenerateObjectiveError&) {
        rep.status = SolveStatus::degenerate;
        return rep;
    }
    rep.joint_conditional = post.joint;
    rep.p0 = post.p0;
    rep.exact_phase_conditional = ideal.conditional;
    rep.exact_phase_p0 = ideal.p0;

    const std::uint64_t reg = std::uint64_t{1} << params.l;
    std::vector<double> marginal(rep.feasible.size(), 0.0);
    for (std::size_t slot = 0; slot < rep.feasible.size(); ++slot)
        for (std::uint64_t j = 0; j < reg; ++j)
            marginal[slot] += post.joint[(slot << params.l) + j];

    std::size_t best_slot = 0;
    std::uint64_t peak_j = 0;
    if (params.shots > 0) {
        std::map<std::uint64_t, std::uint64_t> hist;
        if (params.resample)
            hist = resample_loop(s2, params.shots, params.seed, rep.resample_attempts);
        else
            hist = sample_distribution(post.joint, params.shots, params.seed);
        std::vector<double> freq(rep.feasible.size(), 0.0);
        std::vector<std::vector<std::uint64_t>> per_slot_j(rep.feasible.size(),
                                                           std::vector<std::uint64_t>(reg, 0));
        for (const auto& [cell, count] : hist) {
            const std::size_t slot = cell >> params.l;
            per_slot_j[slot][cell & (reg - 1)] += count;
            freq[slot] += double(count) / double(params.shots);
        }
        rep.feasible_after = freq;
        best_slot = std::max_element(freq.begin(), freq.end()) - freq.begin();
        peak_j = std::max_element(per_slot_j[best_slot].begin(), per_slot_j[best_slot].end()) -
                 per_slot_j[best_slot].begin();
    } else {
        rep.feasible_after = marginal;
        best_slot = std::max_element(marginal.begin(), marginal.end()) - marginal.begin();
        const double* row = post.joint.data() + (best_slot << params.l);
        peak_j = std::max_element(row, row + reg) - row;
    }

    rep.optimum_y = rep.feasible[best_slot];
    rep.optimum_assignment = rep.feasible_assignments[best_slot];
    rep.optimum_cost = rep.feasible_costs[best_slot];
    rep.estimated_cost = rep.cub.value * double(peak_j) / double(reg) - 1.0;
    rep.p_success = marginal[best_slot];
    rep.reps = repetitions(std::min(rep.p_success, 1.0), params.target_success);

    // Phase-resolution margin between the two largest distinct costs.
    std::vector<double> costs = rep.feasible_costs;
    std::sort(costs.begin(), costs.end());
    costs.erase(std::unique(costs.begin(), costs.end()), costs.end());
    if (costs.size() >= 2) {
        const double c_star = costs.back();
        const double c_dagger = costs[costs.size() - 2];
        rep.resolution =
            resolvable(c_star, c_dagger, rep.cub.value, 1.0 / double(reg), 0.0);
        rep.resolution_defined = true;
    }
    return rep;
}

}  // namespace qipsim
