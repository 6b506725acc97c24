/*
 * Shared types, tolerances and error taxonomy for the qipsim library.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qipsim {

using cxd = std::complex<double>;

// Execution backend for the amplitude kernels. `serial` is the plain
// reference implementation, `parallel` the OpenMP path. Both compute the
// same quantities; tests compare them, the benchmark times them.
enum class Exec { serial, parallel };

// Numerical tolerances, fixed project-wide.
inline constexpr double kNormTol = 1e-9;          // norm preservation after unitaries
inline constexpr double kPostselectTol = 1e-12;   // "numerically zero" pattern mass
inline constexpr double kConvexityTol = 1e-9;     // eigenvalue sign threshold
inline constexpr double kBoundaryWarnTol = 1e-9;  // |C_i(y) - h_i| proximity warning
inline constexpr double kNormalizeEps = 1e-6;     // slack for <= -> < with non-integer data

inline constexpr std::uint64_t kDefaultDimCap = std::uint64_t{1} << 26;   // amplitudes
inline constexpr std::uint64_t kDefaultEnumCap = std::uint64_t{1} << 24;  // brute-force states

// Problem document violates the input schema or basic validity rules.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested register layout or enumeration exceeds the configured cap.
struct CapExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance-level validity failures (bad bounds, negative feasible cost, ...).
struct ProblemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Feasible region is empty: the all-ones qubit pattern carries no mass.
struct UndecidableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every feasible state has zero cost; the ancilla never lands in |0>.
struct DegenerateObjectiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// d^n * 2^m style powers with overflow detection.
std::uint64_t checked_pow(std::uint64_t base, int exp);

}  // namespace qipsim
