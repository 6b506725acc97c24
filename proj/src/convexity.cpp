#include "qipsim/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qipsim {

std::vector<std::vector<Polynomial>> hessian(const Polynomial& p) {
    int n = p.num_vars();
    std::vector<std::vector<Polynomial>> h(n, std::vector<Polynomial>(n));
    for (int a = 0; a < n; ++a) {
        Polynomial da = p.derivative(a);
        for (int b = a; b < n; ++b) {
            h[a][b] = da.derivative(b);
            if (b != a) h[b][a] = h[a][b];
        }
    }
    return h;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int dim) {
    auto at = [&](int i, int j) -> double& { return a[i * dim + j]; };
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-24) break;
        for (int p = 0; p < dim; ++p) {
            for (int q = p + 1; q < dim; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < dim; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < dim; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(dim);
    for (int i = 0; i < dim; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

namespace {

// Probe points per axis: grid_per_axis equally spaced values over [0, d-1],
// merged with the integer values when that stays small.
std::vector<double> axis_values(int d, int grid_per_axis, bool add_integers) {
    std::set<double> vals;
    if (grid_per_axis < 2) grid_per_axis = 2;
    for (int i = 0; i < grid_per_axis; ++i)
        vals.insert(double(d - 1) * double(i) / double(grid_per_axis - 1));
    if (add_integers)
        for (int v = 0; v < d; ++v) vals.insert(double(v));
    return {vals.begin(), vals.end()};
}

}  // namespace

ConvexityReport convexity_report(const IpProblem& p, int grid_per_axis) {
    ConvexityReport report;
    report.grid_per_axis = grid_per_axis;
    for (const auto& c : p.constraints) {
        ConstraintConvexity cc;
        auto h = hessian(c.lhs);
        int n = p.n;
        for (int a = 0; a < n; ++a) {
            bool nonzero = false;
            for (int b = 0; b < n; ++b)
                if (!h[a][b].is_zero()) nonzero = true;
            if (nonzero) cc.hessian_support.push_back(a);
        }
        if (cc.hessian_support.empty()) {
            cc.classification = ConvexityClass::linear;
            report.constraints.push_back(std::move(cc));
            continue;
        }
        // Only the support block can have nonzero eigenvalues; probe it over
        // the support sub-box and hold the other variables at zero.
        const auto& sup = cc.hessian_support;
        int s = static_cast<int>(sup.size());
        constexpr std::uint64_t kMaxProbePoints = 200000;
        int per_axis = grid_per_axis;
        bool add_integers = true;
        auto point_count = [&](int per, bool ints) {
            double axis = double(axis_values(p.d, per, ints).size());
            double total = 1.0;
            for (int i = 0; i < s; ++i) total *= axis;
            return total;
        };
        while (per_axis > 2 && point_count(per_axis, add_integers) > double(kMaxProbePoints)) {
            if (add_integers)
                add_integers = false;
            else
                --per_axis;
        }
        std::vector<double> axis = axis_values(p.d, per_axis, add_integers);
        std::vector<std::size_t> odo(s, 0);
        std::vector<double> x(n, 0.0);
        std::vector<double> mat(s * s);
        bool first = true;
        bool done = false;
        while (!done) {
            for (int i = 0; i < s; ++i) x[sup[i]] = axis[odo[i]];
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j)
                    mat[i * s + j] = h[sup[i]][sup[j]].eval(std::span<const double>(x));
            std::vector<double> eig = symmetric_eigenvalues(mat, s);
            double lo = eig.front(), hi = eig.back();
            if (first) {
                cc.min_eigenvalue = lo;
                cc.max_eigenvalue = hi;
                first = false;
            } else {
                cc.min_eigenvalue = std::min(cc.min_eigenvalue, lo);
                cc.max_eigenvalue = std::max(cc.max_eigenvalue, hi);
            }
            if (!cc.witness && lo < -kConvexityTol && hi > kConvexityTol) {
                cc.classification = ConvexityClass::non_convex;
                cc.witness = x;
            }
            done = true;
            for (int i = s - 1; i >= 0; --i) {
                if (++odo[i] < axis.size()) {
                    done = false;
                    break;
                }
                odo[i] = 0;
            }
        }
        if (cc.classification != ConvexityClass::non_convex)
            cc.classification = ConvexityClass::convex;
        report.constraints.push_back(std::move(cc));
    }
    return report;
}

}  // namespace qipsim
