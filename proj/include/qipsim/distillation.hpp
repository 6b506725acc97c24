/*
 * Distillation stage: builds the per-constraint 1-sparse entangling
 * permutations and applies them sequentially, entangling every qudit index
 * with the qubit pattern that records which constraints it satisfies.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "qipsim/hybrid_state.hpp"
#include "qipsim/problem.hpp"

namespace qipsim {

// f_i(c, h) = 2^floor(c/h): 1 on the feasible side, even otherwise.
enum class DistillValue { feasible_one, infeasible_even };

// Qubit-flip predicate for constraint value c against bound h > 0. The
// comparison is the semantic c < h; for c >= 0 this coincides with the
// parity of 2^floor(c/h).
DistillValue distill_value(double c_val, double h);

// U_{f_i} stored as its flip-set: the qudit indices whose qubit i toggles.
// Applying the permutation twice is the identity.
struct EntanglerPermutation {
    int constraint_index = 0;              // 1-based
    std::vector<std::uint8_t> flip;        // bitmap over y in [0, d^n)
    std::uint64_t flip_count = 0;
    bool rational_path = false;            // exact-arithmetic comparisons used
    bool boundary_warning = false;         // double path saw |C_i(y) - h_i| < 1e-9

    std::vector<std::uint64_t> flip_indices() const;
};

EntanglerPermutation build_entangler(const IpProblem& p, int i, Exec exec = Exec::parallel);

std::vector<EntanglerPermutation> build_all_entanglers(const IpProblem& p,
                                                       Exec exec = Exec::parallel);

HybridState apply_entangler(HybridState s, const EntanglerPermutation& e,
                            Exec exec = Exec::parallel);

// Product over i = 1..m of U_{f_i}; from |psi_2> this produces |psi_3>.
HybridState apply_entanglers_sequential(HybridState s, const IpProblem& p,
                                        Exec exec = Exec::parallel);
HybridState apply_entanglers_sequential(HybridState s,
                                        std::span<const EntanglerPermutation> entanglers,
                                        Exec exec = Exec::parallel);

// Probability of measuring a qubit pattern of Hamming weight gamma, for
// gamma = 0..m; sums to 1.
std::vector<double> gamma_histogram(const HybridState& s, Exec exec = Exec::parallel);

// Dense matrix of the permutation on the joint register (tests only; the
// dimension d^n * 2^m must be small).
std::vector<std::vector<double>> materialize_entangler(const EntanglerPermutation& e,
                                                       const RegisterLayout& layout);

// Indices satisfying every constraint (intersection of the flip-sets).
std::vector<std::uint64_t> feasible_indices(std::span<const EntanglerPermutation> entanglers,
                                            std::uint64_t qudit_dim);

}  // namespace qipsim
