#include "qipsim/kernels.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qipsim::kernels {

namespace {

// Fixed block count for parallel reductions; summation order is
// block-by-block regardless of thread count.
constexpr std::ptrdiff_t kReduceBlocks = 256;

template <typename F>
double blocked_sum(std::ptrdiff_t count, F&& per_index) {
    std::ptrdiff_t blocks = std::min<std::ptrdiff_t>(kReduceBlocks, std::max<std::ptrdiff_t>(count, 1));
    std::ptrdiff_t chunk = (count + blocks - 1) / blocks;
    std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
        double s = 0.0;
        std::ptrdiff_t lo = b * chunk;
        std::ptrdiff_t hi = std::min(lo + chunk, count);
        for (std::ptrdiff_t i = lo; i < hi; ++i) s += per_index(i);
        partial[b] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

}  // namespace

double norm_sq(std::span<const cxd> v, Exec exec) {
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(v.size());
    if (exec == Exec::serial) {
        double s = 0.0;
        for (const cxd& c : v) s += std::norm(c);
        return s;
    }
    return blocked_sum(count, [&](std::ptrdiff_t i) { return std::norm(v[i]); });
}

cxd inner_product(std::span<const cxd> a, std::span<const cxd> b, Exec exec) {
    assert(a.size() == b.size());
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(a.size());
    if (exec == Exec::serial) {
        cxd s = 0.0;
        for (std::ptrdiff_t i = 0; i < count; ++i) s += std::conj(a[i]) * b[i];
        return s;
    }
    double re = blocked_sum(count, [&](std::ptrdiff_t i) {
        return a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    });
    double im = blocked_sum(count, [&](std::ptrdiff_t i) {
        return a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    });
    return {re, im};
}

void scale(std::span<cxd> v, double factor, Exec exec) {
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(v.size());
    if (exec == Exec::serial) {
        for (cxd& c : v) c *= factor;
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) v[i] *= factor;
}

void apply_axis_unitary(std::span<cxd> amps, std::span<const cxd> u, int d,
                        std::size_t stride, Exec exec) {
    assert(u.size() == static_cast<std::size_t>(d) * d);
    assert(amps.size() % (static_cast<std::size_t>(d) * stride) == 0);
    const std::size_t span = static_cast<std::size_t>(d) * stride;
    const std::ptrdiff_t fibers = static_cast<std::ptrdiff_t>(amps.size() / span * stride);
    if (exec == Exec::serial) {
        std::vector<cxd> in(d);
        for (std::ptrdiff_t f = 0; f < fibers; ++f) {
            std::size_t hi = static_cast<std::size_t>(f) / stride;
            std::size_t lo = static_cast<std::size_t>(f) % stride;
            std::size_t base = hi * span + lo;
            for (int a = 0; a < d; ++a) in[a] = amps[base + a * stride];
            for (int b = 0; b < d; ++b) {
                cxd acc = 0.0;
                for (int a = 0; a < d; ++a) acc += u[b * d + a] * in[a];
                amps[base + b * stride] = acc;
            }
        }
        return;
    }
#pragma omp parallel
    {
        std::vector<cxd> in(d);
#pragma omp for schedule(static)
        for (std::ptrdiff_t f = 0; f < fibers; ++f) {
            std::size_t hi = static_cast<std::size_t>(f) / stride;
            std::size_t lo = static_cast<std::size_t>(f) % stride;
            std::size_t base = hi * span + lo;
            for (int a = 0; a < d; ++a) in[a] = amps[base + a * stride];
            for (int b = 0; b < d; ++b) {
                cxd acc = 0.0;
                for (int a = 0; a < d; ++a) acc += u[b * d + a] * in[a];
                amps[base + b * stride] = acc;
            }
        }
    }
}

void negate_strided(std::span<cxd> amps, std::size_t offset, std::size_t stride, Exec exec) {
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(amps.size() / stride);
    if (exec == Exec::serial) {
        for (std::ptrdiff_t k = 0; k < count; ++k) amps[offset + k * stride] = -amps[offset + k * stride];
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k)
        amps[offset + k * stride] = -amps[offset + k * stride];
}

double strided_prob(std::span<const cxd> amps, std::size_t offset, std::size_t stride,
                    Exec exec) {
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(amps.size() / stride);
    if (exec == Exec::serial) {
        double s = 0.0;
        for (std::ptrdiff_t k = 0; k < count; ++k) s += std::norm(amps[offset + k * stride]);
        return s;
    }
    return blocked_sum(count,
                       [&](std::ptrdiff_t k) { return std::norm(amps[offset + k * stride]); });
}

void reflect_about(std::span<cxd> s, std::span<const cxd> ref, Exec exec) {
    assert(s.size() == ref.size());
    const cxd overlap = inner_product(ref, s, exec);
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(s.size());
    if (exec == Exec::serial) {
        for (std::ptrdiff_t i = 0; i < count; ++i) s[i] = 2.0 * overlap * ref[i] - s[i];
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) s[i] = 2.0 * overlap * ref[i] - s[i];
}

void swap_flagged_pairs(std::span<cxd> amps, std::span<const std::uint8_t> flip,
                        std::uint64_t qubit_dim, std::uint64_t bit, Exec exec) {
    const std::ptrdiff_t ycount = static_cast<std::ptrdiff_t>(flip.size());
    auto swap_slice = [&](std::ptrdiff_t y) {
        if (!flip[y]) return;
        const std::size_t base = static_cast<std::size_t>(y) * qubit_dim;
        for (std::uint64_t q = 0; q < qubit_dim; ++q) {
            if (q & bit) continue;
            std::swap(amps[base + q], amps[base + (q | bit)]);
        }
    };
    if (exec == Exec::serial) {
        for (std::ptrdiff_t y = 0; y < ycount; ++y) swap_slice(y);
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t y = 0; y < ycount; ++y) swap_slice(y);
}

void phase_ramp(std::span<cxd> amps, std::span<const double> phases, int l, Exec exec) {
    const std::size_t reg = std::size_t{1} << l;
    const std::ptrdiff_t slots = static_cast<std::ptrdiff_t>(phases.size());
    assert(amps.size() == static_cast<std::size_t>(slots) * reg * 2);
    auto ramp_slot = [&](std::ptrdiff_t s) {
        const double w = 2.0 * std::numbers::pi * phases[s];
        for (std::size_t k = 0; k < reg; ++k) {
            const cxd factor = std::polar(1.0, w * double(k));
            const std::size_t base = ((static_cast<std::size_t>(s) << l) + k) * 2;
            amps[base] *= factor;
            amps[base + 1] *= factor;
        }
    };
    if (exec == Exec::serial) {
        for (std::ptrdiff_t s = 0; s < slots; ++s) ramp_slot(s);
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t s = 0; s < slots; ++s) ramp_slot(s);
}

void qft_axis(std::span<cxd> amps, std::size_t slots, int l, bool inverse, Exec exec) {
    const std::size_t reg = std::size_t{1} << l;
    assert(amps.size() == slots * reg * 2);
    const double sign = inverse ? -1.0 : 1.0;
    std::vector<cxd> twiddle(reg);
    for (std::size_t t = 0; t < reg; ++t)
        twiddle[t] = std::polar(1.0, sign * 2.0 * std::numbers::pi * double(t) / double(reg));
    const double scale = 1.0 / std::sqrt(double(reg));
    const std::ptrdiff_t lanes = static_cast<std::ptrdiff_t>(slots) * 2;
    auto transform_lane = [&](std::ptrdiff_t lane, std::vector<cxd>& in) {
        const std::size_t slot = static_cast<std::size_t>(lane) / 2;
        const std::size_t a = static_cast<std::size_t>(lane) % 2;
        for (std::size_t k = 0; k < reg; ++k) in[k] = amps[((slot << l) + k) * 2 + a];
        for (std::size_t j = 0; j < reg; ++j) {
            cxd acc = 0.0;
            for (std::size_t k = 0; k < reg; ++k) acc += twiddle[(j * k) % reg] * in[k];
            amps[((slot << l) + j) * 2 + a] = acc * scale;
        }
    };
    if (exec == Exec::serial) {
        std::vector<cxd> in(reg);
        for (std::ptrdiff_t lane = 0; lane < lanes; ++lane) transform_lane(lane, in);
        return;
    }
#pragma omp parallel
    {
        std::vector<cxd> in(reg);
#pragma omp for schedule(static)
        for (std::ptrdiff_t lane = 0; lane < lanes; ++lane) transform_lane(lane, in);
    }
}

void ancilla_rotation(std::span<cxd> amps, std::span<const double> r0,
                      std::span<const double> r1, int l, Exec exec) {
    const std::size_t reg = std::size_t{1} << l;
    assert(r0.size() == reg && r1.size() == reg);
    const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(amps.size() / 2);
    auto rotate_cell = [&](std::ptrdiff_t c) {
        const std::size_t j = static_cast<std::size_t>(c) & (reg - 1);
        const cxd a0 = amps[2 * c];
        amps[2 * c] = r0[j] * a0;
        amps[2 * c + 1] = r1[j] * a0;
    };
    if (exec == Exec::serial) {
        for (std::ptrdiff_t c = 0; c < cells; ++c) rotate_cell(c);
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < cells; ++c) rotate_cell(c);
}

}  // namespace qipsim::kernels
