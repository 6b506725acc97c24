/*
 * Polynomial integer-programming problem model.
 *
 * Represents instances of
 *     maximize  C(x)          (polynomial)
 *     s.t.      C_i(x) < h_i  (strict after normalization, h_i > 0)
 *               x_b in {0, ..., d-1},  b = 1..n
 * together with parsing from the JSON problem document, relation
 * normalization, index<->assignment codecs and the cost upper bound.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qipsim/common.hpp"

namespace qipsim {

struct Monomial {
    double coeff = 0.0;
    std::vector<int> exponents;  // one entry per variable

    int total_degree() const;
};

// Canonical form: terms sorted by exponent sequence, duplicates merged,
// exact-zero coefficients dropped. Empty term list is the zero polynomial.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(int num_vars, std::vector<Monomial> terms);

    int num_vars() const { return num_vars_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    double eval(std::span<const int> x) const;
    double eval(std::span<const double> x) const;

    double constant_term() const;
    Polynomial negated() const;
    Polynomial plus_constant(double c) const;
    Polynomial derivative(int var) const;

    // Variables appearing with a nonzero exponent in some term.
    std::vector<int> support() const;

private:
    int num_vars_ = 0;
    std::vector<Monomial> terms_;
};

enum class Relation { less, less_equal, greater, greater_equal };

struct RawConstraint {
    Polynomial lhs;
    Relation relation = Relation::less;
    double bound = 0.0;
};

// Normalized constraint: lhs < bound with bound > 0.
struct Constraint {
    Polynomial lhs;
    double bound = 0.0;
};

struct RawProblem {
    int n = 0;
    int d = 0;
    Polynomial cost;
    std::vector<RawConstraint> constraints;
};

struct IpProblem {
    int n = 0;
    int d = 0;
    Polynomial cost;
    std::vector<Constraint> constraints;

    int m() const { return static_cast<int>(constraints.size()); }
    std::uint64_t state_count() const;  // d^n

    // Evaluation with range validation of the assignment.
    double cost_at(std::span<const int> x) const;
    double constraint_at(int i, std::span<const int> x) const;  // i is 0-based here
    bool satisfies_all(std::span<const int> x) const;
};

enum class ConstraintVerdict { normal, tautology, contradiction };

// Per-constraint record of what normalization did.
struct NormalizeNote {
    double gap = 0.0;    // slack added when converting <= / >= to strict <
    double shift = 0.0;  // constant added to both sides to make the bound positive
    ConstraintVerdict verdict = ConstraintVerdict::normal;
};

struct NormalizedProblem {
    IpProblem problem;
    std::vector<NormalizeNote> notes;
};

// Relation normalization. Every output constraint is strict-less-than with a
// strictly positive bound; the feasible set over {0..d-1}^n is preserved.
// Tautologies and contradictions over the box (detected when provable) are
// kept in place and reported through their note's verdict.
NormalizedProblem normalize_problem(const RawProblem& raw);

// JSON problem document -> raw instance (schema-checked, monomials merged).
RawProblem parse_raw_problem(const std::string& text);

// JSON problem document -> canonicalized, normalized instance.
IpProblem parse_problem(const std::string& text);

// Big-endian base-d positional code: y = sum_b x_b * d^(n-b); variable 1 is
// the most significant digit.
std::uint64_t encode_assignment(std::span<const int> x, int n, int d);
std::vector<int> decode_index(std::uint64_t y, int n, int d);

enum class CubMode { guaranteed, paper_style, override_value };

struct CubResult {
    double value = 0.0;
    CubMode mode_used = CubMode::guaranteed;  // after any fallback
    bool certified = false;                   // C(y)+1 < value verified on feasible states
    bool uncertified_warning = false;         // accepted without an enumeration check
};

// Strict upper bound on C(y)+1 over the feasible region.
//   guaranteed : sum_j |coeff_j| * (d-1)^deg_j + 1.5
//   paper_style: best continuous local-search value + 1.5, certified against
//                feasible costs when available, else falls back to guaranteed
//   override   : caller-supplied value, rejected if a known feasible state
//                violates it, warning-flagged when no check is possible
// `known_feasible_costs` lets callers that already enumerated the feasible
// region certify without a second enumeration; otherwise the instance is
// enumerated when d^n <= enum_cap.
CubResult cost_upper_bound(const IpProblem& p, CubMode mode,
                           double override_value = 0.0,
                           std::span<const double> known_feasible_costs = {},
                           std::uint64_t enum_cap = kDefaultEnumCap,
                           std::uint64_t search_seed = 20240901);

}  // namespace qipsim
