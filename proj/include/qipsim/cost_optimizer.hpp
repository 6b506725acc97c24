/*
 * Stage II: phase table, QPE with inverse QFT over the feasible subspace,
 * the j-conditioned ancilla rotation, ancilla post-selection, and the
 * end-to-end solve pipeline producing a SolveReport.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "qipsim/amplification.hpp"
#include "qipsim/analysis.hpp"
#include "qipsim/distillation.hpp"
#include "qipsim/hybrid_state.hpp"
#include "qipsim/problem.hpp"

namespace qipsim {

// Normalized phases phi~(y) = (C(y) + 1) / C_ub over the feasible set.
struct PhaseTable {
    double c_ub = 0.0;
    struct Entry {
        std::uint64_t y = 0;
        double cost = 0.0;
        double phase = 0.0;
    };
    std::vector<Entry> entries;  // ascending y
};

// Throws ProblemError on a negative feasible cost or when C_ub fails to put
// every phase strictly inside (0, 1).
PhaseTable build_phase_table(const IpProblem& p, std::span<const std::uint64_t> feasible,
                             double c_ub);

// Eigenvalue of O_c^k on |y>: exp(i 2 pi phi~(y) k).
cxd phase_oracle_check(const PhaseTable& table, std::uint64_t y, std::uint64_t k);

// Stage-II register: feasible slots (ascending y) x l-bit value x ancilla,
// flattened as ((slot << l) + k) * 2 + a.
struct StageTwoState {
    std::vector<std::uint64_t> feasible;
    int l = 0;
    std::vector<cxd> amplitudes;

    std::size_t slots() const { return feasible.size(); }
    std::size_t index(std::size_t slot, std::size_t k, std::size_t a) const {
        return ((slot << l) + k) * 2 + a;
    }
    double norm_sq(Exec exec = Exec::parallel) const {
        return kernels::norm_sq(amplitudes, exec);
    }
};

// Feasible slots seeded from the collapsed qudit state, l-register in the
// uniform superposition, ancilla |0>.
StageTwoState stage_two_init(const HybridState& collapsed,
                             std::span<const std::uint64_t> feasible, int l,
                             std::uint64_t dim_cap = dim_cap_from_env());

// Controlled powers of the phase oracle followed by the inverse QFT on the
// l register.
StageTwoState qpe(StageTwoState s, const PhaseTable& table, Exec exec = Exec::parallel);

// Ancilla rotation conditioned on the measured register value j: for
// C_ub * j/2^l >= 1 the |1>-amplitude becomes (C_ub j/2^l)^-1; the j = 0 and
// sub-unit branches send the ancilla to |1> so post-selection removes them.
// `excluded_mass`, when given, receives the probability routed through those
// guarded branches.
StageTwoState controlled_rotation(StageTwoState s, double c_ub, Exec exec = Exec::parallel,
                                  double* excluded_mass = nullptr);

struct AncillaPostselection {
    std::vector<double> joint;  // slots x 2^l conditional probabilities, sums to 1
    double p0 = 0.0;            // ancilla-|0> mass before renormalization
};

// Throws DegenerateObjectiveError when the |0> mass vanishes (every feasible
// cost is zero).
AncillaPostselection postselect_ancilla_zero(const StageTwoState& s,
                                             Exec exec = Exec::parallel);

struct ExactPhaseResult {
    std::vector<double> conditional;  // per slot
    double p0 = 0.0;
};

// Closed form of the ideal (exactly represented phase) pipeline on the given
// slot amplitudes: p0 = sum |c_y|^2 (1 - (1+C(y))^-2).
ExactPhaseResult exact_phase_distribution(const PhaseTable& table,
                                          std::span<const cxd> slot_amplitudes);

struct SolveParams {
    int l = 4;
    CubMode cub_mode = CubMode::guaranteed;
    double cub_override = 0.0;
    std::uint64_t shots = 0;  // 0 = exact distribution readout
    std::uint64_t seed = 0;
    bool resample = false;  // literal repeat-until-|0> measurement loop
    double target_success = 0.99;
    Exec exec = Exec::parallel;
    std::uint64_t dim_cap = 0;  // 0 = QIPSIM_DIM_CAP / default
};

enum class SolveStatus { ok, undecidable, degenerate };

struct SolveReport {
    SolveStatus status = SolveStatus::ok;
    int n = 0, d = 0, m = 0, l = 0;
    std::uint64_t shots = 0, seed = 0;
    bool exact_readout = true;

    // Stage I
    std::vector<double> qubit_pattern_before;  // per pattern, 2^m entries
    std::vector<double> qubit_pattern_after;
    double target_prob_initial = 0.0;
    double target_prob_final = 0.0;
    int grover_iterations = 0;
    UndecidabilityDiagnosis diagnosis;
    double collapse_probability = 0.0;

    std::vector<std::uint64_t> feasible;  // ascending
    std::vector<std::vector<int>> feasible_assignments;
    std::vector<double> feasible_costs;

    CubResult cub;

    // Stage II
    std::vector<double> feasible_before;    // per slot, post-collapse
    std::vector<double> feasible_after;     // per slot, final (exact or sampled)
    std::vector<double> joint_conditional;  // slots x 2^l, exact readout
    double p0 = 0.0;
    std::vector<double> exact_phase_conditional;  // closed-form ideal, per slot
    double exact_phase_p0 = 0.0;

    // Decoded optimum
    std::uint64_t optimum_y = 0;
    std::vector<int> optimum_assignment;
    double optimum_cost = 0.0;
    double estimated_cost = 0.0;  // C_ub * j_peak / 2^l - 1

    double p_success = 0.0;  // exact conditional probability of the decoded optimum
    RepetitionEstimate reps;
    double target_success = 0.99;

    // Diagnosis flags
    ResolutionCheck resolution;
    bool resolution_defined = false;  // needs two distinct feasible costs
    double excluded_branch_mass = 0.0;
    bool excluded_branch_warning = false;
    std::vector<int> boundary_warning_constraints;  // 1-based indices
    bool rational_comparisons = false;              // all entanglers exact
    std::uint64_t resample_attempts = 0;
};

// Steps 1-7 in order: init, Hadamards, entanglers, amplification,
// post-selection, Stage-II init, QPE, rotation, ancilla post-selection,
// readout. Undecidable and degenerate instances come back as a flagged
// report with the later stages skipped.
SolveReport solve(const IpProblem& p, const SolveParams& params = {});

// Smallest register width (capped at 12) with 2^l >= 2 C_ub. For integer
// costs this separates distinct phases by at least two bins and keeps the
// largest phase away from the wrap-around at j = 0, so the measured argmax
// is trustworthy.
int recommended_register_width(double c_ub);

// Parameters for oracle verification runs: C_ub is the guaranteed bound
// rounded up to a power of two, and l adds enough fractional bits for the
// known costs, so costs on a dyadic grid turn into exactly representable
// phases and the measured argmax provably equals the cost argmax.
SolveParams verification_params(const IpProblem& p,
                                std::span<const double> feasible_costs = {});

}  // namespace qipsim
