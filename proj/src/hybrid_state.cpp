#include "qipsim/hybrid_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>

namespace qipsim {

std::uint64_t dim_cap_from_env() {
    if (const char* env = std::getenv("QIPSIM_DIM_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultDimCap;
}

RegisterLayout::RegisterLayout(int n_, int d_, int m_, std::uint64_t cap)
    : n(n_), d(d_), m(m_) {
    if (n < 1) throw std::invalid_argument("layout needs at least one qudit");
    if (d < 2) throw std::invalid_argument("qudit dimension must be >= 2");
    if (m < 0 || m >= 63) throw std::invalid_argument("invalid qubit count");
    qudit_dim = checked_pow(static_cast<std::uint64_t>(d), n);
    qubit_dim = std::uint64_t{1} << m;
    if (qudit_dim > cap / qubit_dim)
        throw CapExceededError("layout dimension d^n * 2^m exceeds cap " + std::to_string(cap));
    dim = qudit_dim * qubit_dim;
}

HybridState init_state(const RegisterLayout& layout) {
    HybridState s;
    s.layout = layout;
    s.amplitudes.assign(layout.dim, cxd{0.0, 0.0});
    s.amplitudes[0] = 1.0;
    return s;
}

std::vector<cxd> hadamard_matrix(int d) {
    std::vector<cxd> u(static_cast<std::size_t>(d) * d);
    const double scale = 1.0 / std::sqrt(double(d));
    for (int beta = 0; beta < d; ++beta)
        for (int alpha = 0; alpha < d; ++alpha)
            u[beta * d + alpha] =
                std::polar(scale, 2.0 * std::numbers::pi * double(alpha) * double(beta) / double(d));
    return u;
}

HybridState apply_hadamard_all_qudits(HybridState s, Exec exec) {
    const auto& lay = s.layout;
    const std::vector<cxd> h = hadamard_matrix(lay.d);
    std::size_t stride = lay.dim / lay.d;  // qudit 1 (most significant) first
    for (int b = 0; b < lay.n; ++b) {
        kernels::apply_axis_unitary(s.amplitudes, h, lay.d, stride, exec);
        stride /= lay.d;
    }
    return s;
}

namespace {

void check_pattern(const RegisterLayout& lay, std::uint64_t pattern) {
    if (pattern >= lay.qubit_dim)
        throw std::out_of_range("qubit pattern " + std::to_string(pattern) +
                                " does not fit in " + std::to_string(lay.m) + " bits");
}

}  // namespace

double qubit_pattern_probability(const HybridState& s, std::uint64_t pattern, Exec exec) {
    check_pattern(s.layout, pattern);
    return kernels::strided_prob(s.amplitudes, pattern, s.layout.qubit_dim, exec);
}

std::pair<HybridState, double> postselect_qubits(const HybridState& s, std::uint64_t pattern,
                                                 Exec exec) {
    check_pattern(s.layout, pattern);
    const double prob = qubit_pattern_probability(s, pattern, exec);
    if (prob <= kPostselectTol)
        throw UndecidableError("qubit pattern " + std::to_string(pattern) +
                               " is unobservable (probability " + std::to_string(prob) + ")");
    HybridState collapsed;
    collapsed.layout = RegisterLayout(s.layout.n, s.layout.d, 0,
                                      std::max<std::uint64_t>(s.layout.qudit_dim, 1));
    collapsed.amplitudes.resize(s.layout.qudit_dim);
    const double inv = 1.0 / std::sqrt(prob);
    for (std::uint64_t y = 0; y < s.layout.qudit_dim; ++y)
        collapsed.amplitudes[y] = s.amplitudes[s.layout.joint_index(y, pattern)] * inv;
    return {std::move(collapsed), prob};
}

namespace {

// Sorted-uniform sweep: O(dim + shots log shots) and independent of any
// library distribution internals, so histograms replay exactly per seed.
std::map<std::uint64_t, std::uint64_t> sweep_sample(std::uint64_t count,
                                                    const std::function<double(std::uint64_t)>& prob_at,
                                                    std::uint64_t shots, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> u(shots);
    for (auto& v : u) v = double(rng() >> 11) * 0x1.0p-53;
    std::sort(u.begin(), u.end());
    std::map<std::uint64_t, std::uint64_t> hist;
    double cum = 0.0;
    std::size_t next = 0;
    std::uint64_t last_positive = 0;
    for (std::uint64_t i = 0; i < count && next < u.size(); ++i) {
        double p = prob_at(i);
        if (p > 0.0) last_positive = i;
        cum += p;
        std::uint64_t taken = 0;
        while (next < u.size() && u[next] < cum) {
            ++taken;
            ++next;
        }
        if (taken) hist[i] += taken;
    }
    // rounding leftovers land on the last index that carries mass
    if (next < u.size() && count > 0) hist[last_positive] += u.size() - next;
    return hist;
}

}  // namespace

std::map<std::uint64_t, std::uint64_t> sample(const HybridState& s, std::uint64_t shots,
                                              std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    return sweep_sample(
        s.amplitudes.size(), [&](std::uint64_t i) { return std::norm(s.amplitudes[i]); }, shots,
        seed);
}

std::map<std::uint64_t, std::uint64_t> sample_distribution(std::span<const double> probs,
                                                           std::uint64_t shots,
                                                           std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    return sweep_sample(
        probs.size(), [&](std::uint64_t i) { return probs[i]; }, shots, seed);
}

}  // namespace qipsim
