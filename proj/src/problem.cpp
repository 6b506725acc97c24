#include "qipsim/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

namespace qipsim {

namespace {

double ipow(double base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

bool is_integral(double v) { return std::isfinite(v) && std::floor(v) == v; }

void check_assignment(std::span<const int> x, int n, int d) {
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("assignment length " + std::to_string(x.size()) +
                                    " does not match n=" + std::to_string(n));
    for (int v : x)
        if (v < 0 || v >= d)
            throw std::out_of_range("assignment value " + std::to_string(v) +
                                    " outside [0, " + std::to_string(d - 1) + "]");
}

// Interval of a polynomial over the box [0, d-1]^n, one monomial at a time.
std::pair<double, double> box_interval(const Polynomial& p, int d) {
    double lo = 0.0, hi = 0.0;
    for (const auto& t : p.terms()) {
        int deg = t.total_degree();
        if (deg == 0) {
            lo += t.coeff;
            hi += t.coeff;
        } else {
            double extreme = t.coeff * ipow(double(d - 1), deg);
            lo += std::min(0.0, extreme);
            hi += std::max(0.0, extreme);
        }
    }
    return {lo, hi};
}

}  // namespace

int Monomial::total_degree() const {
    int deg = 0;
    for (int e : exponents) deg += e;
    return deg;
}

Polynomial::Polynomial(int num_vars, std::vector<Monomial> terms)
    : num_vars_(num_vars), terms_(std::move(terms)) {
    if (num_vars_ < 0) throw std::invalid_argument("negative variable count");
    for (const auto& t : terms_) {
        if (static_cast<int>(t.exponents.size()) != num_vars_)
            throw std::invalid_argument("exponent sequence of wrong length");
        if (!std::isfinite(t.coeff))
            throw std::invalid_argument("non-finite coefficient");
        for (int e : t.exponents)
            if (e < 0) throw std::invalid_argument("negative exponent");
    }
    std::sort(terms_.begin(), terms_.end(), [](const Monomial& a, const Monomial& b) {
        return a.exponents < b.exponents;
    });
    std::vector<Monomial> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exponents == t.exponents)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Monomial& t) { return t.coeff == 0.0; });
    terms_ = std::move(merged);
}

double Polynomial::eval(std::span<const int> x) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
        double prod = t.coeff;
        for (std::size_t b = 0; b < t.exponents.size(); ++b)
            if (t.exponents[b] > 0) prod *= ipow(double(x[b]), t.exponents[b]);
        sum += prod;
    }
    return sum;
}

double Polynomial::eval(std::span<const double> x) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
        double prod = t.coeff;
        for (std::size_t b = 0; b < t.exponents.size(); ++b)
            if (t.exponents[b] > 0) prod *= ipow(x[b], t.exponents[b]);
        sum += prod;
    }
    return sum;
}

double Polynomial::constant_term() const {
    for (const auto& t : terms_)
        if (t.total_degree() == 0) return t.coeff;
    return 0.0;
}

Polynomial Polynomial::negated() const {
    std::vector<Monomial> terms = terms_;
    for (auto& t : terms) t.coeff = -t.coeff;
    return Polynomial(num_vars_, std::move(terms));
}

Polynomial Polynomial::plus_constant(double c) const {
    std::vector<Monomial> terms = terms_;
    terms.push_back(Monomial{c, std::vector<int>(num_vars_, 0)});
    return Polynomial(num_vars_, std::move(terms));
}

Polynomial Polynomial::derivative(int var) const {
    std::vector<Monomial> terms;
    for (const auto& t : terms_) {
        if (t.exponents[var] == 0) continue;
        Monomial dt = t;
        dt.coeff *= t.exponents[var];
        dt.exponents[var] -= 1;
        terms.push_back(std::move(dt));
    }
    return Polynomial(num_vars_, std::move(terms));
}

std::vector<int> Polynomial::support() const {
    std::vector<int> vars;
    for (int b = 0; b < num_vars_; ++b) {
        for (const auto& t : terms_) {
            if (t.exponents[b] > 0) {
                vars.push_back(b);
                break;
            }
        }
    }
    return vars;
}

std::uint64_t IpProblem::state_count() const {
    return checked_pow(static_cast<std::uint64_t>(d), n);
}

double IpProblem::cost_at(std::span<const int> x) const {
    check_assignment(x, n, d);
    return cost.eval(x);
}

double IpProblem::constraint_at(int i, std::span<const int> x) const {
    check_assignment(x, n, d);
    return constraints.at(i).lhs.eval(x);
}

bool IpProblem::satisfies_all(std::span<const int> x) const {
    for (const auto& c : constraints)
        if (!(c.lhs.eval(x) < c.bound)) return false;
    return true;
}

std::uint64_t encode_assignment(std::span<const int> x, int n, int d) {
    check_assignment(x, n, d);
    std::uint64_t y = 0;
    for (int b = 0; b < n; ++b) y = y * d + static_cast<std::uint64_t>(x[b]);
    return y;
}

std::vector<int> decode_index(std::uint64_t y, int n, int d) {
    std::uint64_t total = checked_pow(static_cast<std::uint64_t>(d), n);
    if (y >= total)
        throw std::out_of_range("basis index " + std::to_string(y) + " outside [0, " +
                                std::to_string(total - 1) + "]");
    std::vector<int> x(n);
    for (int b = n - 1; b >= 0; --b) {
        x[b] = static_cast<int>(y % d);
        y /= d;
    }
    return x;
}

namespace {

// Strict bound equivalent to "lhs <= h" over the box. For integer-valued
// polynomials the new bound sits half the minimum value gap above the
// largest achievable value that still satisfies the relation, so the
// feasible set is preserved exactly. Non-integer data falls back to the
// configurable eps slack.
double strict_bound_for_leq(const Polynomial& lhs, int d, double h) {
    bool integral = true;
    for (const auto& t : lhs.terms())
        if (!is_integral(t.coeff)) integral = false;
    if (!integral) return h + kNormalizeEps;

    std::vector<int> vars = lhs.support();
    constexpr std::uint64_t kGapEnumCap = std::uint64_t{1} << 16;
    std::uint64_t count = 1;
    bool enumerable = true;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        count *= static_cast<std::uint64_t>(d);
        if (count > kGapEnumCap) {
            enumerable = false;
            break;
        }
    }
    // Integer-valued lhs: "v <= h" is "v <= floor(h)", and no integer lies
    // strictly between floor(h) and floor(h) + 1.
    if (!enumerable) return std::floor(h) + 0.5;

    std::vector<int> x(lhs.num_vars(), 0);
    std::vector<double> values;
    values.reserve(count);
    for (std::uint64_t it = 0; it < count; ++it) {
        std::uint64_t rem = it;
        for (int v : vars) {
            x[v] = static_cast<int>(rem % d);
            rem /= d;
        }
        values.push_back(lhs.eval(std::span<const int>(x)));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    double gap = 1.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        double g = values[i] - values[i - 1];
        gap = i == 1 ? g : std::min(gap, g);
    }
    auto above = std::upper_bound(values.begin(), values.end(), h);
    if (above == values.begin()) return values.front() - 0.5 * gap;  // never satisfiable
    return *std::prev(above) + 0.5 * gap;
}

}  // namespace

NormalizedProblem normalize_problem(const RawProblem& raw) {
    if (raw.n < 1) throw ProblemError("n must be >= 1");
    if (raw.d < 2) throw ProblemError("d must be >= 2");
    NormalizedProblem out;
    out.problem.n = raw.n;
    out.problem.d = raw.d;
    out.problem.cost = raw.cost;
    for (const auto& rc : raw.constraints) {
        Polynomial lhs = rc.lhs;
        double bound = rc.bound;
        NormalizeNote note;
        switch (rc.relation) {
            case Relation::less:
                break;
            case Relation::less_equal: {
                double strict = strict_bound_for_leq(lhs, raw.d, bound);
                note.gap = strict - bound;
                bound = strict;
                break;
            }
            case Relation::greater:
                lhs = lhs.negated();
                bound = -bound;
                break;
            case Relation::greater_equal: {
                lhs = lhs.negated();
                bound = -bound;
                double strict = strict_bound_for_leq(lhs, raw.d, bound);
                note.gap = strict - bound;
                bound = strict;
                break;
            }
        }
        if (!std::isfinite(bound)) throw ProblemError("non-finite constraint bound");
        if (bound <= 0.0) {
            note.shift = std::ceil(1.0 - bound);
            lhs = lhs.plus_constant(note.shift);
            bound += note.shift;
        }
        if (bound <= 0.0)
            throw ProblemError("normalization failed to produce a positive bound");
        auto [lo, hi] = box_interval(lhs, raw.d);
        if (hi < bound)
            note.verdict = ConstraintVerdict::tautology;
        else if (lo >= bound)
            note.verdict = ConstraintVerdict::contradiction;
        out.problem.constraints.push_back(Constraint{std::move(lhs), bound});
        out.notes.push_back(note);
    }
    return out;
}

namespace {

using nlohmann::json;

Polynomial parse_terms(const json& arr, int n, const char* what) {
    if (!arr.is_array()) throw SchemaError(std::string(what) + " must be an array");
    std::vector<Monomial> terms;
    for (const auto& item : arr) {
        if (!item.is_object() || !item.contains("coeff") || !item.contains("exponents"))
            throw SchemaError(std::string(what) + " entries need coeff and exponents");
        if (!item["coeff"].is_number())
            throw SchemaError("coefficient must be a number");
        Monomial t;
        t.coeff = item["coeff"].get<double>();
        if (!std::isfinite(t.coeff)) throw SchemaError("non-finite coefficient");
        const auto& ex = item["exponents"];
        if (!ex.is_array() || static_cast<int>(ex.size()) != n)
            throw SchemaError("exponent sequence of wrong length (expected " +
                              std::to_string(n) + ")");
        for (const auto& e : ex) {
            if (!e.is_number_integer() || e.get<long long>() < 0)
                throw SchemaError("exponents must be non-negative integers");
            t.exponents.push_back(e.get<int>());
        }
        terms.push_back(std::move(t));
    }
    try {
        return Polynomial(n, std::move(terms));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

Relation parse_relation(const std::string& s) {
    if (s == "<") return Relation::less;
    if (s == "<=") return Relation::less_equal;
    if (s == ">") return Relation::greater;
    if (s == ">=") return Relation::greater_equal;
    throw SchemaError("unknown relation \"" + s + "\"");
}

}  // namespace

RawProblem parse_raw_problem(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("problem document must be a JSON object");
    for (const char* key : {"n", "d", "cost"})
        if (!doc.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
    if (!doc["n"].is_number_integer() || !doc["d"].is_number_integer())
        throw SchemaError("n and d must be integers");
    RawProblem raw;
    raw.n = doc["n"].get<int>();
    raw.d = doc["d"].get<int>();
    if (raw.n < 1) throw SchemaError("n must be >= 1");
    if (raw.d < 2) throw SchemaError("d must be >= 2");
    raw.cost = parse_terms(doc["cost"], raw.n, "cost");
    if (doc.contains("constraints")) {
        if (!doc["constraints"].is_array()) throw SchemaError("constraints must be an array");
        for (const auto& item : doc["constraints"]) {
            if (!item.is_object() || !item.contains("terms") || !item.contains("relation") ||
                !item.contains("bound"))
                throw SchemaError("constraints need terms, relation and bound");
            RawConstraint rc;
            rc.lhs = parse_terms(item["terms"], raw.n, "constraint terms");
            if (!item["relation"].is_string())
                throw SchemaError("relation must be a string");
            rc.relation = parse_relation(item["relation"].get<std::string>());
            if (!item["bound"].is_number()) throw SchemaError("bound must be a number");
            rc.bound = item["bound"].get<double>();
            if (!std::isfinite(rc.bound)) throw SchemaError("non-finite bound");
            raw.constraints.push_back(std::move(rc));
        }
    }
    return raw;
}

IpProblem parse_problem(const std::string& text) {
    return normalize_problem(parse_raw_problem(text)).problem;
}

namespace {

// Max feasible cost by direct enumeration; nullopt when d^n exceeds the cap.
struct EnumCheck {
    bool enumerable = false;
    bool any_feasible = false;
    double max_cost = -std::numeric_limits<double>::infinity();
};

EnumCheck enumerate_feasible_max(const IpProblem& p, std::uint64_t cap) {
    EnumCheck res;
    std::uint64_t total;
    try {
        total = p.state_count();
    } catch (const CapExceededError&) {
        return res;
    }
    if (total > cap) return res;
    res.enumerable = true;
    std::vector<int> x(p.n, 0);
    for (std::uint64_t y = 0; y < total; ++y) {
        if (p.satisfies_all(x)) {
            res.any_feasible = true;
            res.max_cost = std::max(res.max_cost, p.cost.eval(std::span<const int>(x)));
        }
        for (int b = p.n - 1; b >= 0; --b) {
            if (++x[b] < p.d) break;
            x[b] = 0;
        }
    }
    return res;
}

double guaranteed_bound(const IpProblem& p) {
    double sum = 0.0;
    for (const auto& t : p.cost.terms())
        sum += std::abs(t.coeff) * ipow(double(p.d - 1), t.total_degree());
    return sum + 1.5;
}

bool point_feasible_relaxed(const IpProblem& p, std::span<const double> x) {
    for (const auto& c : p.constraints)
        if (!(c.lhs.eval(x) < c.bound)) return false;
    return true;
}

// Multi-start coordinate search on the continuous relaxation. Best effort:
// returns the best feasible value found, or -inf when no feasible point was
// seen at all.
double continuous_search(const IpProblem& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, double(p.d - 1));
    double best = -std::numeric_limits<double>::infinity();
    const int starts = 32;
    for (int s = 0; s < starts; ++s) {
        std::vector<double> x(p.n);
        if (s == 0)
            std::fill(x.begin(), x.end(), 0.0);
        else
            for (auto& v : x) v = unif(rng);
        if (!point_feasible_relaxed(p, x)) continue;
        double fx = p.cost.eval(std::span<const double>(x));
        double step = 0.5 * double(p.d - 1);
        while (step > 1e-4) {
            bool improved = false;
            for (int b = 0; b < p.n; ++b) {
                for (double dir : {+1.0, -1.0}) {
                    double old = x[b];
                    x[b] = std::clamp(old + dir * step, 0.0, double(p.d - 1));
                    double fy = p.cost.eval(std::span<const double>(x));
                    if (fy > fx && point_feasible_relaxed(p, x)) {
                        fx = fy;
                        improved = true;
                    } else {
                        x[b] = old;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        best = std::max(best, fx);
    }
    return best;
}

}  // namespace

CubResult cost_upper_bound(const IpProblem& p, CubMode mode, double override_value,
                           std::span<const double> known_feasible_costs,
                           std::uint64_t enum_cap, std::uint64_t search_seed) {
    CubResult res;
    auto certify = [&](double value) -> std::optional<bool> {
        // true/false when checkable, nullopt when the instance cannot be enumerated
        if (!known_feasible_costs.empty()) {
            for (double c : known_feasible_costs)
                if (!(c + 1.0 < value)) return false;
            return true;
        }
        EnumCheck chk = enumerate_feasible_max(p, enum_cap);
        if (!chk.enumerable) return std::nullopt;
        if (!chk.any_feasible) return true;  // nothing to violate
        return chk.max_cost + 1.0 < value;
    };

    switch (mode) {
        case CubMode::guaranteed: {
            res.value = guaranteed_bound(p);
            res.mode_used = CubMode::guaranteed;
            res.certified = true;  // interval bound holds over the whole box
            return res;
        }
        case CubMode::paper_style: {
            double c_cont = continuous_search(p, search_seed);
            if (std::isfinite(c_cont)) {
                double candidate = c_cont + 1.5;
                auto ok = certify(candidate);
                if (ok.has_value() && *ok) {
                    res.value = candidate;
                    res.mode_used = CubMode::paper_style;
                    res.certified = true;
                    return res;
                }
            }
            res.value = guaranteed_bound(p);
            res.mode_used = CubMode::guaranteed;
            res.certified = true;
            return res;
        }
        case CubMode::override_value: {
            if (!(std::isfinite(override_value) && override_value > 0.0))
                throw ProblemError("override C_ub must be a positive finite value");
            auto ok = certify(override_value);
            if (ok.has_value() && !*ok)
                throw ProblemError("override C_ub=" + std::to_string(override_value) +
                                   " violates C(y)+1 < C_ub on a feasible state");
            res.value = override_value;
            res.mode_used = CubMode::override_value;
            res.certified = ok.has_value();
            res.uncertified_warning = !ok.has_value();
            return res;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace qipsim
