#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qipsim/amplification.hpp"
#include "qipsim/distillation.hpp"
#include "test_instances.hpp"

using namespace qipsim;

namespace {

HybridState demo_psi3() {
    IpProblem p = testutil::demo_problem();
    HybridState psi2 = apply_hadamard_all_qudits(init_state(RegisterLayout(p.n, p.d, p.m())));
    return apply_entanglers_sequential(std::move(psi2), p);
}

}  // namespace

TEST_CASE("mark_target flips exactly the all-ones amplitudes") {
    RegisterLayout lay(1, 2, 2);
    HybridState s;
    s.layout = lay;
    s.amplitudes.assign(lay.dim, cxd{0.0, 0.0});
    s.amplitudes[lay.joint_index(0, 3)] = 1.0;
    HybridState t = mark_target(s);
    CHECK(t.amplitudes[lay.joint_index(0, 3)] == cxd{-1.0, 0.0});

    HybridState z = init_state(lay);  // pattern 00 stays put
    HybridState tz = mark_target(z);
    CHECK(tz.amplitudes[0] == cxd{1.0, 0.0});
}

TEST_CASE("mark_target on the demo state flips the six feasible amplitudes") {
    HybridState psi3 = demo_psi3();
    HybridState marked = mark_target(psi3);
    const auto& lay = psi3.layout;
    int flipped = 0, changed = 0;
    for (std::uint64_t y = 0; y < lay.qudit_dim; ++y) {
        for (std::uint64_t q = 0; q < lay.qubit_dim; ++q) {
            cxd before = psi3.amplitudes[lay.joint_index(y, q)];
            cxd after = marked.amplitudes[lay.joint_index(y, q)];
            if (after != before) ++changed;
            if (q == lay.all_ones_pattern() && std::abs(before) > 0) {
                CHECK(after == -before);
                ++flipped;
            }
        }
    }
    CHECK(flipped == 6);
    CHECK(changed == 6);

    HybridState twice = mark_target(marked);
    for (std::size_t i = 0; i < psi3.amplitudes.size(); ++i)
        CHECK(twice.amplitudes[i] == psi3.amplitudes[i]);
    CHECK(std::abs(marked.norm_sq() - 1.0) < kNormTol);
}

TEST_CASE("diffuse fixes the reference and negates its complement") {
    RegisterLayout lay(1, 2, 0);
    HybridState ref;
    ref.layout = lay;
    ref.amplitudes = {std::sqrt(0.5), std::sqrt(0.5)};
    HybridState fixed = diffuse(ref, ref);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(fixed.amplitudes[i] - ref.amplitudes[i]) < 1e-12);

    HybridState orth;
    orth.layout = lay;
    orth.amplitudes = {std::sqrt(0.5), -std::sqrt(0.5)};
    HybridState neg = diffuse(orth, ref);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(neg.amplitudes[i] + orth.amplitudes[i]) < 1e-12);
}

TEST_CASE("one grover step follows the sin^2(3 theta) law on the demo state") {
    HybridState psi3 = demo_psi3();
    const double p0 = qubit_pattern_probability(psi3, psi3.layout.all_ones_pattern());
    CHECK(p0 == doctest::Approx(6.0 / 243.0));
    HybridState stepped = diffuse(mark_target(psi3), psi3);
    const double theta = std::asin(std::sqrt(p0));
    const double expect = std::sin(3.0 * theta) * std::sin(3.0 * theta);
    CHECK(qubit_pattern_probability(stepped, psi3.layout.all_ones_pattern()) ==
          doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("optimal iteration counts") {
    CHECK(optimal_iterations(6.0 / 243.0) == 4);
    CHECK(optimal_iterations(1.0) == 0);
    CHECK(optimal_iterations(0.25) == 1);
    CHECK_THROWS_AS(optimal_iterations(0.0), std::domain_error);
    CHECK_THROWS_AS(optimal_iterations(-0.5), std::domain_error);
}

TEST_CASE("amplify drives the demo state to the closed-form maximum") {
    HybridState psi3 = demo_psi3();
    AmplifyResult res = amplify(psi3);
    CHECK(res.iterations == 4);
    const double theta = std::asin(std::sqrt(6.0 / 243.0));
    const double expect = std::pow(std::sin(9.0 * theta), 2.0);
    CHECK(res.final_probability == doctest::Approx(expect).epsilon(1e-9));
    CHECK(res.final_probability > 0.97);
    CHECK(std::abs(res.state.norm_sq() - 1.0) < kNormTol);
}

TEST_CASE("quarter probability amplifies to one in a single step") {
    RegisterLayout lay(1, 2, 1);
    HybridState s;
    s.layout = lay;
    // target pattern q=1 carries probability 1/4
    s.amplitudes = {std::sqrt(0.375), 0.5, std::sqrt(0.375), 0.0};
    AmplifyResult res = amplify(s);
    CHECK(res.iterations == 1);
    CHECK(res.final_probability == doctest::Approx(1.0).epsilon(1e-9));

    HybridState full;
    full.layout = lay;
    full.amplitudes = {0.0, 1.0, 0.0, 0.0};
    AmplifyResult noop = amplify(full);
    CHECK(noop.iterations == 0);
    CHECK(noop.final_probability == doctest::Approx(1.0));
    for (std::size_t i = 0; i < full.amplitudes.size(); ++i)
        CHECK(noop.state.amplitudes[i] == full.amplitudes[i]);
}

TEST_CASE("probability follows the two-dimensional rotation law") {
    HybridState psi3 = demo_psi3();
    const double p0 = qubit_pattern_probability(psi3, psi3.layout.all_ones_pattern());
    const double theta = std::asin(std::sqrt(p0));
    const int p_opt = optimal_iterations(p0);
    HybridState s = psi3;
    for (int k = 1; k <= 3 * p_opt; ++k) {
        s = diffuse(mark_target(std::move(s)), psi3);
        const double expect = std::pow(std::sin((2.0 * k + 1.0) * theta), 2.0);
        CHECK(qubit_pattern_probability(s, s.layout.all_ones_pattern()) ==
              doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("amplification leaves the conditional feasible distribution alone") {
    HybridState psi3 = demo_psi3();
    AmplifyResult res = amplify(psi3);
    const auto& lay = psi3.layout;
    const double before = qubit_pattern_probability(psi3, lay.all_ones_pattern());
    const double after = res.final_probability;
    for (std::uint64_t y = 0; y < lay.qudit_dim; ++y) {
        double pb = std::norm(psi3.amplitudes[lay.joint_index(y, lay.all_ones_pattern())]);
        double pa = std::norm(res.state.amplitudes[lay.joint_index(y, lay.all_ones_pattern())]);
        CHECK(std::abs(pb / before - pa / after) < 1e-12);
    }
}

TEST_CASE("overshooting by a full period returns to the optimum value") {
    HybridState psi3 = demo_psi3();
    const double p0 = qubit_pattern_probability(psi3, psi3.layout.all_ones_pattern());
    const double theta = std::asin(std::sqrt(p0));
    const int p_opt = optimal_iterations(p0);
    const int period = static_cast<int>(std::ceil(std::numbers::pi / (2.0 * theta)));
    HybridState s = psi3;
    double at_opt = 0.0;
    for (int k = 1; k <= p_opt + period; ++k) {
        s = diffuse(mark_target(std::move(s)), psi3);
        if (k == p_opt) at_opt = qubit_pattern_probability(s, s.layout.all_ones_pattern());
    }
    const double at_period = qubit_pattern_probability(s, s.layout.all_ones_pattern());
    CHECK(std::abs(at_period - at_opt) < 0.05);
}

TEST_CASE("empty feasible regions are diagnosed, not amplified") {
    IpProblem p = normalize_problem(testutil::contradictory_raw()).problem;
    HybridState psi2 = apply_hadamard_all_qudits(init_state(RegisterLayout(p.n, p.d, p.m())));
    HybridState psi3 = apply_entanglers_sequential(std::move(psi2), p);
    CHECK_THROWS_AS(amplify(psi3), UndecidableError);
    UndecidabilityDiagnosis diag = detect_undecidable(psi3);
    CHECK(diag.undecidable);
    CHECK(diag.gamma_max == p.m() - 1);
    CHECK(diag.suggested_relaxation == 1);
}

TEST_CASE("decidable and trivial diagnoses") {
    HybridState psi3 = demo_psi3();
    UndecidabilityDiagnosis diag = detect_undecidable(psi3);
    CHECK_FALSE(diag.undecidable);
    CHECK(diag.gamma_max == 4);
    CHECK(diag.suggested_relaxation == 0);

    HybridState bare = init_state(RegisterLayout(1, 3, 0));
    UndecidabilityDiagnosis trivial = detect_undecidable(bare);
    CHECK_FALSE(trivial.undecidable);
}
