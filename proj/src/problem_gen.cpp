#include "qipsim/problem_gen.hpp"

namespace qipsim {

namespace {

Polynomial random_polynomial(std::mt19937_64& rng, int n, const InstanceGenOptions& opt,
                             int coeff_min, int coeff_max) {
    std::uniform_int_distribution<int> term_count(1, opt.max_terms);
    std::uniform_int_distribution<int> coeff(coeff_min, coeff_max);
    std::uniform_int_distribution<int> var(0, n - 1);
    std::uniform_int_distribution<int> deg(1, opt.max_degree);
    std::vector<Monomial> terms;
    const int count = term_count(rng);
    for (int t = 0; t < count; ++t) {
        Monomial mono;
        mono.coeff = coeff(rng);
        mono.exponents.assign(n, 0);
        int degree = deg(rng);
        for (int k = 0; k < degree; ++k) mono.exponents[var(rng)] += 1;
        terms.push_back(std::move(mono));
    }
    return Polynomial(n, std::move(terms));
}

}  // namespace

RawProblem random_instance(std::mt19937_64& rng, const InstanceGenOptions& opt) {
    std::uniform_int_distribution<int> pick_n(opt.min_n, opt.max_n);
    std::uniform_int_distribution<int> pick_d(opt.min_d, opt.max_d);
    std::uniform_int_distribution<int> pick_m(opt.min_m, opt.max_m);
    RawProblem raw;
    raw.n = pick_n(rng);
    raw.d = pick_d(rng);
    const int m = pick_m(rng);

    if (opt.injective_cost) {
        std::uniform_int_distribution<int> scale(1, 2);
        const int s = scale(rng);
        std::vector<Monomial> terms;
        double place = 1.0;
        for (int b = raw.n - 1; b >= 0; --b) {
            Monomial mono;
            mono.coeff = s * place;
            mono.exponents.assign(raw.n, 0);
            mono.exponents[b] = 1;
            terms.push_back(std::move(mono));
            place *= raw.d;
        }
        raw.cost = Polynomial(raw.n, std::move(terms));
    } else {
        raw.cost = random_polynomial(rng, raw.n, opt, opt.nonneg_cost ? 0 : opt.coeff_min,
                                     opt.coeff_max);
    }

    std::uniform_int_distribution<int> bound(opt.bound_min, opt.bound_max);
    std::uniform_int_distribution<int> rel(0, opt.mixed_relations ? 3 : 0);
    for (int i = 0; i < m; ++i) {
        RawConstraint rc;
        rc.lhs = random_polynomial(rng, raw.n, opt, opt.coeff_min, opt.coeff_max);
        rc.relation = static_cast<Relation>(rel(rng));
        rc.bound = bound(rng);
        raw.constraints.push_back(std::move(rc));
    }
    return raw;
}

}  // namespace qipsim
