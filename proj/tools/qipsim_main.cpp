/*
 * qipsim command line: solve problem instances, verify them against the
 * classical oracles, and evaluate the analysis models.
 *
 * Exit codes: 0 ok, 1 verification mismatch, 2 parse/validation error,
 * 3 undecidable instance, 4 degenerate objective.
 */
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qipsim/analysis.hpp"
#include "qipsim/cost_optimizer.hpp"
#include "qipsim/oracles.hpp"
#include "qipsim/problem.hpp"
#include "qipsim/problem_gen.hpp"
#include "qipsim/report_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitParse = 2;
constexpr int kExitUndecidable = 3;
constexpr int kExitDegenerate = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qipsim::SchemaError("cannot read problem file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CubFlag {
    qipsim::CubMode mode = qipsim::CubMode::guaranteed;
    double value = 0.0;
};

CubFlag parse_cub(const std::string& s) {
    CubFlag f;
    if (s == "guaranteed") return f;
    if (s == "paper") {
        f.mode = qipsim::CubMode::paper_style;
        return f;
    }
    try {
        std::size_t pos = 0;
        f.value = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw qipsim::SchemaError("--cub expects guaranteed, paper, or a number");
    }
    f.mode = qipsim::CubMode::override_value;
    return f;
}

std::string assignment_string(const std::vector<int>& x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(x[i]);
    }
    return s + ")";
}

int run_solve(const std::string& problem_path, const std::string& out_dir,
              const qipsim::SolveParams& params) {
    qipsim::IpProblem prob = qipsim::parse_problem(read_file(problem_path));
    qipsim::SolveReport rep = qipsim::solve(prob, params);

    std::filesystem::create_directories(out_dir);
    qipsim::write_report_json(out_dir + "/report.json", rep);
    qipsim::write_distributions_csv(out_dir + "/distributions.csv", rep);

    if (rep.status == qipsim::SolveStatus::undecidable) {
        std::cout << "status: undecidable (gamma_max=" << rep.diagnosis.gamma_max
                  << ", relax " << rep.diagnosis.suggested_relaxation
                  << " constraint(s) to proceed)\n";
        return kExitUndecidable;
    }
    if (rep.status == qipsim::SolveStatus::degenerate) {
        std::cout << "status: degenerate objective (every feasible cost is zero)\n";
        return kExitDegenerate;
    }
    std::printf("optimum: y=%llu assignment=%s cost=%.12g (estimated %.12g)\n",
                static_cast<unsigned long long>(rep.optimum_y),
                assignment_string(rep.optimum_assignment).c_str(), rep.optimum_cost,
                rep.estimated_cost);
    std::printf("p0=%.6f p=%.6f r=%llu (target %.3f)\n", rep.p0, rep.p_success,
                static_cast<unsigned long long>(rep.reps.count), rep.target_success);
    std::printf("feasible %zu of %llu, grover iterations %d, C_ub %.6g\n",
                rep.feasible.size(),
                static_cast<unsigned long long>(qipsim::checked_pow(prob.d, prob.n)),
                rep.grover_iterations, rep.cub.value);
    return kExitOk;
}

// Exact-readout solve vs brute force on one instance. Returns an empty
// string on agreement, else a human-readable diff.
std::string verify_one(const qipsim::IpProblem& prob, const qipsim::SolveParams& params,
                       bool explicit_l, bool explicit_cub) {
    qipsim::BruteForceResult oracle = qipsim::brute_force_solve(prob);
    qipsim::SolveParams exact = params;
    exact.shots = 0;
    if (!explicit_cub && !explicit_l) {
        // power-of-two bound and matching width: dyadic costs become
        // exactly representable phases, so the argmax check is sound
        std::vector<double> costs;
        for (std::uint64_t y : oracle.feasible) {
            std::vector<int> x = qipsim::decode_index(y, prob.n, prob.d);
            costs.push_back(prob.cost.eval(std::span<const int>(x)));
        }
        qipsim::SolveParams chosen = qipsim::verification_params(prob, costs);
        exact.cub_mode = chosen.cub_mode;
        exact.cub_override = chosen.cub_override;
        exact.l = chosen.l;
    } else if (!explicit_l) {
        qipsim::CubResult cub =
            qipsim::cost_upper_bound(prob, params.cub_mode, params.cub_override);
        exact.l = qipsim::recommended_register_width(cub.value);
    }
    qipsim::SolveReport rep = qipsim::solve(prob, exact);

    if (oracle.empty()) {
        if (rep.status != qipsim::SolveStatus::undecidable)
            return "oracle says infeasible but solver returned status " +
                   std::to_string(static_cast<int>(rep.status));
        return {};
    }
    if (rep.status == qipsim::SolveStatus::undecidable)
        return "solver declared undecidable but oracle found " +
               std::to_string(oracle.feasible.size()) + " feasible states";
    if (rep.feasible != oracle.feasible) {
        std::ostringstream ss;
        ss << "feasible sets differ: solver " << rep.feasible.size() << " states, oracle "
           << oracle.feasible.size() << " states";
        return ss.str();
    }
    if (rep.status == qipsim::SolveStatus::degenerate) {
        if (oracle.optimum_cost != 0.0)
            return "solver declared degenerate but oracle optimum cost is " +
                   std::to_string(oracle.optimum_cost);
        return {};
    }
    if (std::abs(rep.optimum_cost - oracle.optimum_cost) > 1e-9) {
        std::ostringstream ss;
        ss << "optimum cost mismatch: solver " << rep.optimum_cost << " at y=" << rep.optimum_y
           << ", oracle " << oracle.optimum_cost << " at y=" << oracle.optima.front();
        return ss.str();
    }
    return {};
}

int run_verify(const std::string& problem_path, std::uint64_t fuzz, std::uint64_t seed,
               const qipsim::SolveParams& params, bool explicit_l, bool explicit_cub) {
    if (fuzz > 0) {
        std::mt19937_64 rng(seed);
        qipsim::InstanceGenOptions opt;
        std::uint64_t mismatches = 0;
        for (std::uint64_t i = 0; i < fuzz; ++i) {
            qipsim::RawProblem raw = qipsim::random_instance(rng, opt);
            qipsim::IpProblem prob = qipsim::normalize_problem(raw).problem;
            std::string diff = verify_one(prob, params, explicit_l, explicit_cub);
            if (!diff.empty()) {
                ++mismatches;
                std::cout << "instance " << i << ": " << diff << "\n";
            }
        }
        std::cout << "fuzz: " << fuzz - mismatches << "/" << fuzz << " instances verified\n";
        return mismatches == 0 ? kExitOk : kExitMismatch;
    }
    qipsim::IpProblem prob = qipsim::parse_problem(read_file(problem_path));
    try {
        std::string diff = verify_one(prob, params, explicit_l, explicit_cub);
        if (!diff.empty()) {
            std::cout << "verify: MISMATCH: " << diff << "\n";
            return kExitMismatch;
        }
    } catch (const qipsim::ProblemError& e) {
        std::cout << "verify: MISMATCH: " << e.what() << "\n";
        return kExitMismatch;
    }
    std::cout << "verify: OK (quantum solution matches brute force)\n";
    return kExitOk;
}

struct GridSpec {
    int n_lo = 0, n_hi = -1;
    int m_lo = 0, m_hi = -1;
    int d = 3;
    double eps = 0.1;
};

GridSpec parse_grid(const std::vector<std::string>& tokens) {
    GridSpec g;
    for (const auto& tok : tokens) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw qipsim::SchemaError("bad grid token " + tok);
        std::string key = tok.substr(0, eq);
        std::string val = tok.substr(eq + 1);
        auto parse_range = [&](int& lo, int& hi) {
            auto dots = val.find("..");
            if (dots == std::string::npos) {
                lo = hi = std::stoi(val);
            } else {
                lo = std::stoi(val.substr(0, dots));
                hi = std::stoi(val.substr(dots + 2));
            }
        };
        try {
            if (key == "n")
                parse_range(g.n_lo, g.n_hi);
            else if (key == "m")
                parse_range(g.m_lo, g.m_hi);
            else if (key == "d")
                g.d = std::stoi(val);
            else if (key == "eps")
                g.eps = std::stod(val);
            else
                throw qipsim::SchemaError("unknown grid key " + key);
        } catch (const std::invalid_argument&) {
            throw qipsim::SchemaError("bad grid value in " + tok);
        }
    }
    if (g.n_hi < g.n_lo || g.m_hi < g.m_lo || g.n_lo < 2 || g.m_lo < 0)
        throw qipsim::SchemaError("empty or invalid grid range (need n>=2, m>=0, lo<=hi)");
    if (g.d < 2 || !(g.eps > 0.0) || !(g.eps < 1.0))
        throw qipsim::SchemaError("grid needs d>=2 and eps in (0,1)");
    return g;
}

int run_analyze(bool r_curves, const std::vector<std::string>& grid_tokens,
                const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    char buf[64];
    auto fmt = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    if (r_curves) {
        std::ofstream out(out_dir + "/r_curves.csv", std::ios::binary);
        out << "target_P,r,p\n";
        for (double target : {0.51, 0.67, 0.80, 0.999})
            for (std::uint64_t r = 1; r <= 100; ++r)
                out << fmt(target) << ',' << r << ','
                    << fmt(qipsim::required_success_probability(target, r)) << '\n';
        std::cout << "wrote " << out_dir << "/r_curves.csv\n";
    }
    if (!grid_tokens.empty()) {
        GridSpec g = parse_grid(grid_tokens);
        std::ofstream out(out_dir + "/models.csv", std::ios::binary);
        out << "row,n,m,d,eps,quantum,brute_force,reis_rothvoss\n";
        for (int n = g.n_lo; n <= g.n_hi; ++n) {
            for (int m = g.m_lo; m <= g.m_hi; ++m) {
                qipsim::ComplexityParams cp;
                cp.n = n;
                cp.m = m;
                cp.d = g.d;
                cp.eps_qpe = g.eps;
                auto q = qipsim::quantum_time_model(cp);
                auto c = qipsim::classical_time_models(cp);
                out << "model," << n << ',' << m << ',' << g.d << ',' << fmt(g.eps) << ','
                    << fmt(q.leading_total) << ',' << fmt(c.brute_force) << ','
                    << fmt(c.reis_rothvoss) << '\n';
            }
        }
        // Smallest n where brute force exceeds the quantum model, per m.
        for (int m = g.m_lo; m <= g.m_hi; ++m) {
            for (int n = 2; n <= 64; ++n) {
                qipsim::ComplexityParams cp;
                cp.n = n;
                cp.m = m;
                cp.d = g.d;
                cp.eps_qpe = g.eps;
                auto q = qipsim::quantum_time_model(cp);
                auto c = qipsim::classical_time_models(cp);
                if (c.brute_force > q.leading_total) {
                    out << "crossover," << n << ',' << m << ',' << g.d << ',' << fmt(g.eps)
                        << ',' << fmt(q.leading_total) << ',' << fmt(c.brute_force) << ','
                        << fmt(c.reis_rothvoss) << '\n';
                    break;
                }
            }
        }
        std::cout << "wrote " << out_dir << "/models.csv\n";
    }
    if (!r_curves && grid_tokens.empty())
        throw qipsim::SchemaError("analyze needs --r-curves and/or --grid");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qudit-based integer-programming solver simulator"};
    app.require_subcommand(1);

    std::string problem_path, out_dir = ".";
    qipsim::SolveParams params;
    std::string cub_str = "guaranteed";
    std::uint64_t shots = 4096;
    bool exact = false;

    auto add_solve_flags = [&](CLI::App* cmd) {
        cmd->add_option("--problem", problem_path, "problem JSON file");
        cmd->add_option("--l", params.l, "QPE register width (1..12)");
        cmd->add_option("--cub", cub_str, "guaranteed | paper | <value>");
        cmd->add_option("--shots", shots, "measurement shots (sampled readout)");
        cmd->add_option("--seed", params.seed, "RNG seed");
        cmd->add_flag("--exact", exact, "exact distribution readout instead of sampling");
        cmd->add_flag("--resample", params.resample,
                      "repeat-until-|0> sampling loop instead of post-selection");
        cmd->add_option("--target", params.target_success, "overall success target");
        cmd->add_option("--out", out_dir, "output directory");
    };

    CLI::App* solve_cmd = app.add_subcommand("solve", "run the two-stage pipeline");
    add_solve_flags(solve_cmd);
    solve_cmd->get_option("--problem")->required();

    CLI::App* verify_cmd = app.add_subcommand("verify", "check against the brute-force oracle");
    std::uint64_t fuzz = 0;
    add_solve_flags(verify_cmd);
    verify_cmd->add_option("--fuzz", fuzz, "verify this many random instances");

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "evaluate the complexity models");
    bool r_curves = false;
    std::vector<std::string> grid_tokens;
    analyze_cmd->add_flag("--r-curves", r_curves, "repetition-vs-p curves");
    analyze_cmd->add_option("--grid", grid_tokens, "model grid, e.g. n=2..8 m=2..8 d=3 eps=0.1")
        ->expected(-1);
    analyze_cmd->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        CubFlag cub = parse_cub(cub_str);
        params.cub_mode = cub.mode;
        params.cub_override = cub.value;
        params.shots = exact ? 0 : shots;

        if (solve_cmd->parsed()) return run_solve(problem_path, out_dir, params);
        if (verify_cmd->parsed()) {
            if (fuzz == 0 && problem_path.empty())
                throw qipsim::SchemaError("verify needs --problem or --fuzz");
            return run_verify(problem_path, fuzz, params.seed, params,
                              verify_cmd->get_option("--l")->count() > 0,
                              verify_cmd->get_option("--cub")->count() > 0);
        }
        if (analyze_cmd->parsed()) return run_analyze(r_curves, grid_tokens, out_dir);
    } catch (const qipsim::UndecidableError& e) {
        std::cerr << "undecidable: " << e.what() << "\n";
        return kExitUndecidable;
    } catch (const qipsim::DegenerateObjectiveError& e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitOk;
}
