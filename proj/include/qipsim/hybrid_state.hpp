/*
 * Hybrid qudit-qubit register engine: dense state allocation, generalized
 * Hadamards, qubit-pattern probabilities, post-selection and measurement
 * sampling. Operations return new states; the joint index convention is
 *     idx = y * 2^m + q
 * with y the big-endian base-d qudit index and q the qubit bitstring read
 * with constraint 1 as the most significant bit.
 */
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qipsim/common.hpp"
#include "qipsim/kernels.hpp"

namespace qipsim {

// Amplitude cap for new layouts: QIPSIM_DIM_CAP when set, else 2^26.
std::uint64_t dim_cap_from_env();

struct RegisterLayout {
    int n = 0;  // qudit count
    int d = 2;  // qudit dimension
    int m = 0;  // qubit count
    std::uint64_t qudit_dim = 1;  // d^n
    std::uint64_t qubit_dim = 1;  // 2^m
    std::uint64_t dim = 1;        // d^n * 2^m

    RegisterLayout() = default;
    RegisterLayout(int n, int d, int m, std::uint64_t cap = dim_cap_from_env());

    std::uint64_t joint_index(std::uint64_t y, std::uint64_t q) const {
        return y * qubit_dim + q;
    }
    // Qubit-register bit mask of constraint i (1-based, MSB-first).
    std::uint64_t constraint_bit(int i) const {
        return std::uint64_t{1} << (m - i);
    }
    std::uint64_t all_ones_pattern() const { return qubit_dim - 1; }
};

struct HybridState {
    RegisterLayout layout;
    std::vector<cxd> amplitudes;

    double norm_sq(Exec exec = Exec::parallel) const {
        return kernels::norm_sq(amplitudes, exec);
    }
};

// |0...0>|0...0>
HybridState init_state(const RegisterLayout& layout);

// Generalized Hadamard H_d with (H_d)_{beta alpha} = d^{-1/2} exp(2 pi i
// alpha beta / d), applied to every qudit; qubits untouched.
std::vector<cxd> hadamard_matrix(int d);
HybridState apply_hadamard_all_qudits(HybridState s, Exec exec = Exec::parallel);

// Probability of measuring the qubit register in `pattern`.
double qubit_pattern_probability(const HybridState& s, std::uint64_t pattern,
                                 Exec exec = Exec::parallel);

// Collapse onto a qubit pattern; returns the renormalized qudit-only state
// (layout m = 0) and the pattern probability. Throws UndecidableError when
// the pattern mass is below kPostselectTol.
std::pair<HybridState, double> postselect_qubits(const HybridState& s, std::uint64_t pattern,
                                                 Exec exec = Exec::parallel);

// Seeded i.i.d. draws from |amp|^2; histogram over joint basis indices.
std::map<std::uint64_t, std::uint64_t> sample(const HybridState& s, std::uint64_t shots,
                                              std::uint64_t seed);

// Same sampler for any explicit probability vector (sums to ~1).
std::map<std::uint64_t, std::uint64_t> sample_distribution(std::span<const double> probs,
                                                           std::uint64_t shots,
                                                           std::uint64_t seed);

}  // namespace qipsim
