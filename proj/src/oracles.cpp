#include "qipsim/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qipsim {

BruteForceResult brute_force_solve(const IpProblem& p, std::uint64_t cap, Exec exec) {
    const std::uint64_t total = p.state_count();
    if (total > cap)
        throw CapExceededError("d^n = " + std::to_string(total) +
                               " exceeds the enumeration cap " + std::to_string(cap));
    std::vector<std::uint8_t> ok(total, 0);
    const auto count = static_cast<std::ptrdiff_t>(total);
    auto probe = [&](std::ptrdiff_t y) {
        std::vector<int> x = decode_index(static_cast<std::uint64_t>(y), p.n, p.d);
        ok[y] = p.satisfies_all(x) ? 1 : 0;
    };
    if (exec == Exec::serial) {
        for (std::ptrdiff_t y = 0; y < count; ++y) probe(y);
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t y = 0; y < count; ++y) probe(y);
    }

    BruteForceResult res;
    res.evaluations = total;
    double best = -std::numeric_limits<double>::infinity();
    for (std::uint64_t y = 0; y < total; ++y) {
        if (!ok[y]) continue;
        res.feasible.push_back(y);
        double c = p.cost.eval(std::span<const int>(decode_index(y, p.n, p.d)));
        if (c > best) {
            best = c;
            res.optima.assign(1, y);
        } else if (c == best) {
            res.optima.push_back(y);
        }
    }
    if (!res.feasible.empty()) res.optimum_cost = best;
    return res;
}

namespace {

double ipow(double base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

struct BnbContext {
    const IpProblem& p;
    BranchBoundResult result;
    std::vector<int> assignment;

    // Upper bound on the cost over completions of the first `fixed` variables.
    double cost_upper(int fixed) const {
        double bound = 0.0;
        for (const auto& t : p.cost.terms()) {
            double part = t.coeff;
            int unfixed_deg = 0;
            for (int b = 0; b < p.n; ++b) {
                if (t.exponents[b] == 0) continue;
                if (b < fixed)
                    part *= ipow(double(assignment[b]), t.exponents[b]);
                else
                    unfixed_deg += t.exponents[b];
            }
            if (unfixed_deg == 0)
                bound += part;
            else
                bound += std::abs(part) * ipow(double(p.d - 1), unfixed_deg);
        }
        return bound;
    }

    void visit(int fixed) {
        ++result.node_count;
        if (fixed == p.n) {
            if (!p.satisfies_all(assignment)) return;
            double c = p.cost.eval(std::span<const int>(assignment));
            if (!result.has_incumbent) {
                result.first_incumbent_cost = c;
                result.has_incumbent = true;
            }
            if (!result.feasible || c > result.optimum_cost) {
                result.feasible = true;
                result.optimum_cost = c;
                result.optimum_assignment = assignment;
            }
            return;
        }
        if (result.feasible && cost_upper(fixed) <= result.optimum_cost) return;
        for (int v = 0; v < p.d; ++v) {
            assignment[fixed] = v;
            visit(fixed + 1);
        }
        assignment[fixed] = 0;
    }
};

}  // namespace

BranchBoundResult branch_and_bound_solve(const IpProblem& p) {
    BnbContext ctx{p, {}, std::vector<int>(p.n, 0)};
    ctx.visit(0);
    return ctx.result;
}

}  // namespace qipsim
