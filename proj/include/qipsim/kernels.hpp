/*
 * Amplitude-array kernels. Every kernel has two implementations selected by
 * `Exec`: a plain serial reference and an OpenMP-parallel variant. The
 * parallel variant uses fixed-size blocked reductions so its results do not
 * depend on the number of threads.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qipsim/common.hpp"

namespace qipsim::kernels {

double norm_sq(std::span<const cxd> v, Exec exec);

// <a|b> = sum conj(a_i) * b_i
cxd inner_product(std::span<const cxd> a, std::span<const cxd> b, Exec exec);

void scale(std::span<cxd> v, double factor, Exec exec);

// Apply a d x d unitary along one qudit axis: amplitudes at indices
// hi*(d*stride) + alpha*stride + lo transform as out[beta] = sum_alpha
// u[beta*d + alpha] * in[alpha], for every (hi, lo) fiber.
void apply_axis_unitary(std::span<cxd> amps, std::span<const cxd> u, int d,
                        std::size_t stride, Exec exec);

// Negate amplitudes at offset + k*stride for all k.
void negate_strided(std::span<cxd> amps, std::size_t offset, std::size_t stride, Exec exec);

// sum |amps[offset + k*stride]|^2
double strided_prob(std::span<const cxd> amps, std::size_t offset, std::size_t stride,
                    Exec exec);

// s <- 2 <ref|s> ref - s  (reflection about ref)
void reflect_about(std::span<cxd> s, std::span<const cxd> ref, Exec exec);

// For every qudit index y with flip[y] != 0, swap the qubit-register pair
// (q, q | bit) for all q with (q & bit) == 0. qubit_dim = 2^m.
void swap_flagged_pairs(std::span<cxd> amps, std::span<const std::uint8_t> flip,
                        std::uint64_t qubit_dim, std::uint64_t bit, Exec exec);

// Multiply the pair of ancilla lanes of slot s at register value k by
// exp(i 2 pi phase[s] k). Layout: ((s << l) + k) * 2 + a.
void phase_ramp(std::span<cxd> amps, std::span<const double> phases, int l, Exec exec);

// Fourier transforms along the k register of the ((slot << l) + k)*2 + a
// layout; `inverse` selects exp(-2 pi i jk / 2^l) (QPE readout direction).
void qft_axis(std::span<cxd> amps, std::size_t slots, int l, bool inverse, Exec exec);

// Split each a=0 lane into (r0[j], r1[j]) ancilla components; a=1 lanes must
// be zero on entry. r0^2 + r1^2 == 1 per j keeps the map norm-preserving.
void ancilla_rotation(std::span<cxd> amps, std::span<const double> r0,
                      std::span<const double> r1, int l, Exec exec);

}  // namespace qipsim::kernels
