/*
 * Times the serial reference kernels against the OpenMP variants on a
 * larger register. Usage: bench_kernels [n_qudits] [reps]
 */
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qipsim/amplification.hpp"
#include "qipsim/distillation.hpp"
#include "qipsim/hybrid_state.hpp"
#include "qipsim/kernels.hpp"

using namespace qipsim;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F>
double time_op(int reps, F&& op) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = now_seconds();
        op();
        best = std::min(best, now_seconds() - t0);
    }
    return best;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-24s %10.3f ms %10.3f ms %8.2fx\n", name, serial * 1e3, parallel * 1e3,
                serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 18;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
    const int d = 2, m = 4;
    RegisterLayout lay(n, d, m);
    std::printf("register: %d qudits (d=%d), %d qubits, %llu amplitudes\n", n, d, m,
                static_cast<unsigned long long>(lay.dim));
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: OpenMP disabled at build time\n");
#endif
    std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0.0, 1.0);
    HybridState base;
    base.layout = lay;
    base.amplitudes.resize(lay.dim);
    for (auto& c : base.amplitudes) c = cxd{g(rng), g(rng)};
    double norm = std::sqrt(base.norm_sq());
    for (auto& c : base.amplitudes) c /= norm;

    std::vector<std::uint8_t> flip(lay.qudit_dim);
    for (auto& f : flip) f = rng() & 1;

    const auto h = hadamard_matrix(d);

    auto bench_exec = [&](Exec exec) {
        struct Times {
            double hadamard, swaps, grover, pattern;
        } t{};
        HybridState work = base;
        t.hadamard = time_op(reps, [&] {
            kernels::apply_axis_unitary(work.amplitudes, h, d, lay.dim / d, exec);
        });
        t.swaps = time_op(reps, [&] {
            kernels::swap_flagged_pairs(work.amplitudes, flip, lay.qubit_dim, 1, exec);
        });
        t.grover = time_op(reps, [&] {
            kernels::negate_strided(work.amplitudes, lay.all_ones_pattern(), lay.qubit_dim, exec);
            kernels::reflect_about(work.amplitudes, base.amplitudes, exec);
        });
        t.pattern = time_op(reps, [&] {
            volatile double p =
                kernels::strided_prob(work.amplitudes, lay.all_ones_pattern(), lay.qubit_dim, exec);
            (void)p;
        });
        return t;
    };

    auto serial = bench_exec(Exec::serial);
    auto parallel = bench_exec(Exec::parallel);
    row("hadamard axis", serial.hadamard, parallel.hadamard);
    row("entangler swaps", serial.swaps, parallel.swaps);
    row("grover step", serial.grover, parallel.grover);
    row("pattern probability", serial.pattern, parallel.pattern);

    // stage-II transform on a synthetic feasible set
    const int l = 8;
    const std::size_t slots = 512;
    std::vector<cxd> s2(slots * (std::size_t{1} << l) * 2);
    for (auto& c : s2) c = cxd{g(rng), g(rng)};
    std::vector<double> phases(slots);
    for (auto& p : phases) p = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    auto qft_serial = time_op(reps, [&] {
        kernels::phase_ramp(s2, phases, l, Exec::serial);
        kernels::qft_axis(s2, slots, l, true, Exec::serial);
    });
    auto qft_parallel = time_op(reps, [&] {
        kernels::phase_ramp(s2, phases, l, Exec::parallel);
        kernels::qft_axis(s2, slots, l, true, Exec::parallel);
    });
    row("qpe phase + inv qft", qft_serial, qft_parallel);
    return 0;
}
