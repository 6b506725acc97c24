#include "qipsim/distillation.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <optional>

namespace qipsim {

DistillValue distill_value(double c_val, double h) {
    if (!(h > 0.0)) throw ProblemError("distillation bound h must be positive");
    return c_val < h ? DistillValue::feasible_one : DistillValue::infeasible_even;
}

std::vector<std::uint64_t> EntanglerPermutation::flip_indices() const {
    std::vector<std::uint64_t> idx;
    idx.reserve(flip_count);
    for (std::uint64_t y = 0; y < flip.size(); ++y)
        if (flip[y]) idx.push_back(y);
    return idx;
}

namespace {

using i128 = __int128;

// v == p/q bit-exactly with a small denominator, if such a pair exists.
std::optional<std::pair<long long, long long>> to_small_rational(double v) {
    if (!std::isfinite(v)) return std::nullopt;
    constexpr long long kMaxDen = 4096;
    constexpr double kMaxNum = 1099511627776.0;  // 2^40
    for (long long q = 1; q <= kMaxDen; ++q) {
        double scaled = v * double(q);
        if (std::abs(scaled) > kMaxNum) return std::nullopt;
        double rounded = std::round(scaled);
        if (rounded / double(q) == v && scaled == rounded)
            return std::make_pair(static_cast<long long>(rounded), q);
    }
    return std::nullopt;
}

struct RationalConstraint {
    std::vector<i128> coeffs;  // scaled to the common denominator
    i128 bound = 0;
};

constexpr i128 kMagCap = i128{1} << 100;

// Exact integer form of "lhs < bound" on the common denominator, when every
// coefficient and the bound reconstruct as small rationals.
std::optional<RationalConstraint> rationalize(const Constraint& c) {
    auto hb = to_small_rational(c.bound);
    if (!hb) return std::nullopt;
    std::vector<std::pair<long long, long long>> parts;
    long long den = hb->second;
    for (const auto& t : c.lhs.terms()) {
        auto r = to_small_rational(t.coeff);
        if (!r) return std::nullopt;
        parts.push_back(*r);
        den = std::lcm(den, r->second);
        if (den > (1LL << 40)) return std::nullopt;
    }
    RationalConstraint rc;
    for (const auto& [p, q] : parts) rc.coeffs.push_back(i128(p) * (den / q));
    rc.bound = i128(hb->first) * (den / hb->second);
    return rc;
}

// Exact predicate sum coeffs_j * monom_j(x) < bound; nullopt on overflow.
std::optional<bool> rational_predicate(const RationalConstraint& rc, const Polynomial& lhs,
                                       std::span<const int> x) {
    i128 sum = 0;
    const auto& terms = lhs.terms();
    for (std::size_t j = 0; j < terms.size(); ++j) {
        i128 prod = rc.coeffs[j];
        for (std::size_t b = 0; b < terms[j].exponents.size(); ++b)
            for (int e = 0; e < terms[j].exponents[b]; ++e) {
                prod *= x[b];
                if (prod > kMagCap || prod < -kMagCap) return std::nullopt;
            }
        sum += prod;
        if (sum > kMagCap || sum < -kMagCap) return std::nullopt;
    }
    return sum < rc.bound;
}

}  // namespace

EntanglerPermutation build_entangler(const IpProblem& p, int i, Exec exec) {
    if (i < 1 || i > p.m()) throw std::out_of_range("constraint index out of range");
    const Constraint& c = p.constraints[static_cast<std::size_t>(i - 1)];
    const std::uint64_t qudit_dim = p.state_count();

    EntanglerPermutation e;
    e.constraint_index = i;
    e.flip.assign(qudit_dim, 0);

    // Evaluate the predicate only over the constraint's support variables.
    const std::vector<int> sup = c.lhs.support();
    const int s = static_cast<int>(sup.size());
    const std::uint64_t table_size = checked_pow(static_cast<std::uint64_t>(p.d), s);

    auto rc = rationalize(c);
    std::vector<std::uint8_t> table(table_size, 0);
    std::vector<int> x(p.n, 0);
    auto project = [&](std::uint64_t it) {
        std::uint64_t rem = it;
        for (int v = 0; v < s; ++v) {
            x[sup[v]] = static_cast<int>(rem % p.d);
            rem /= p.d;
        }
    };
    bool rational_ok = rc.has_value();
    if (rational_ok) {
        for (std::uint64_t it = 0; it < table_size; ++it) {
            project(it);
            auto exact = rational_predicate(*rc, c.lhs, x);
            if (!exact) {
                rational_ok = false;  // overflow: redo the whole table on doubles
                break;
            }
            table[it] = *exact ? 1 : 0;
        }
    }
    bool boundary = false;
    if (!rational_ok) {
        for (std::uint64_t it = 0; it < table_size; ++it) {
            project(it);
            double v = c.lhs.eval(std::span<const int>(x));
            table[it] = v < c.bound ? 1 : 0;
            if (std::abs(v - c.bound) < kBoundaryWarnTol) boundary = true;
        }
    }
    e.rational_path = rational_ok;
    e.boundary_warning = boundary;

    // Broadcast the projected predicate over all d^n indices.
    std::vector<std::uint64_t> divisor(s);
    for (int v = 0; v < s; ++v)
        divisor[v] = checked_pow(static_cast<std::uint64_t>(p.d), p.n - 1 - sup[v]);
    const std::uint64_t d = static_cast<std::uint64_t>(p.d);
    auto flag = [&](std::uint64_t y) {
        std::uint64_t idx = 0;
        for (int v = s - 1; v >= 0; --v) idx = idx * d + (y / divisor[v]) % d;
        e.flip[y] = table[idx];
    };
    const auto count = static_cast<std::ptrdiff_t>(qudit_dim);
    if (exec == Exec::serial) {
        for (std::ptrdiff_t y = 0; y < count; ++y) flag(static_cast<std::uint64_t>(y));
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t y = 0; y < count; ++y) flag(static_cast<std::uint64_t>(y));
    }
    e.flip_count = 0;
    for (std::uint8_t f : e.flip) e.flip_count += f;
    return e;
}

std::vector<EntanglerPermutation> build_all_entanglers(const IpProblem& p, Exec exec) {
    std::vector<EntanglerPermutation> out;
    out.reserve(p.m());
    for (int i = 1; i <= p.m(); ++i) out.push_back(build_entangler(p, i, exec));
    return out;
}

HybridState apply_entangler(HybridState s, const EntanglerPermutation& e, Exec exec) {
    if (e.flip.size() != s.layout.qudit_dim)
        throw std::invalid_argument("entangler built for a different qudit register");
    if (e.constraint_index < 1 || e.constraint_index > s.layout.m)
        throw std::invalid_argument("entangler qubit outside the register");
    kernels::swap_flagged_pairs(s.amplitudes, e.flip, s.layout.qubit_dim,
                                s.layout.constraint_bit(e.constraint_index), exec);
    return s;
}

HybridState apply_entanglers_sequential(HybridState s,
                                        std::span<const EntanglerPermutation> entanglers,
                                        Exec exec) {
    for (const auto& e : entanglers) s = apply_entangler(std::move(s), e, exec);
    return s;
}

HybridState apply_entanglers_sequential(HybridState s, const IpProblem& p, Exec exec) {
    if (s.layout.m != p.m() || s.layout.n != p.n || s.layout.d != p.d)
        throw std::invalid_argument("state layout does not match the problem");
    auto entanglers = build_all_entanglers(p, exec);
    return apply_entanglers_sequential(std::move(s), entanglers, exec);
}

std::vector<double> gamma_histogram(const HybridState& s, Exec exec) {
    std::vector<double> mass(static_cast<std::size_t>(s.layout.m) + 1, 0.0);
    for (std::uint64_t q = 0; q < s.layout.qubit_dim; ++q)
        mass[std::popcount(q)] += kernels::strided_prob(s.amplitudes, q, s.layout.qubit_dim, exec);
    return mass;
}

std::vector<std::vector<double>> materialize_entangler(const EntanglerPermutation& e,
                                                       const RegisterLayout& layout) {
    if (layout.dim > (std::uint64_t{1} << 12))
        throw CapExceededError("refusing to materialize a permutation this large");
    const std::uint64_t bit = layout.constraint_bit(e.constraint_index);
    std::vector<std::vector<double>> mat(layout.dim, std::vector<double>(layout.dim, 0.0));
    for (std::uint64_t y = 0; y < layout.qudit_dim; ++y) {
        for (std::uint64_t q = 0; q < layout.qubit_dim; ++q) {
            std::uint64_t in = layout.joint_index(y, q);
            std::uint64_t out = e.flip[y] ? layout.joint_index(y, q ^ bit) : in;
            mat[out][in] = 1.0;
        }
    }
    return mat;
}

std::vector<std::uint64_t> feasible_indices(std::span<const EntanglerPermutation> entanglers,
                                            std::uint64_t qudit_dim) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t y = 0; y < qudit_dim; ++y) {
        bool all = true;
        for (const auto& e : entanglers)
            if (!e.flip[y]) {
                all = false;
                break;
            }
        if (all) out.push_back(y);
    }
    return out;
}

}  // namespace qipsim
