/*
 * Constraint convexity analysis via exact symbolic Hessians probed on a grid
 * over the variable box. A non-convex verdict carries a witness point where
 * the Hessian is indefinite; a convex verdict is grid-limited.
 */
#pragma once

#include <optional>
#include <vector>

#include "qipsim/problem.hpp"

namespace qipsim {

enum class ConvexityClass { convex, non_convex, linear };

struct ConstraintConvexity {
    ConvexityClass classification = ConvexityClass::linear;
    // Point where the Hessian has eigenvalues of both signs (non_convex only).
    std::optional<std::vector<double>> witness;
    double min_eigenvalue = 0.0;  // over all probed points
    double max_eigenvalue = 0.0;
    std::vector<int> hessian_support;  // variables with a nonzero Hessian row
};

struct ConvexityReport {
    std::vector<ConstraintConvexity> constraints;
    int grid_per_axis = 0;
};

// Symbolic Hessian d^2 lhs / dx_a dx_b (n x n, symmetric).
std::vector<std::vector<Polynomial>> hessian(const Polynomial& p);

// Eigenvalues of a dense symmetric matrix (row-major, dim x dim) by cyclic
// Jacobi rotations. Ascending order.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int dim);

// Probe each constraint on a grid of `grid_per_axis` points per axis over
// [0, d-1]^n (plus the integer points when the support box is small).
ConvexityReport convexity_report(const IpProblem& p, int grid_per_axis = 5);

}  // namespace qipsim
