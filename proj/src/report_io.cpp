#include "qipsim/report_io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace qipsim {

namespace {

using nlohmann::ordered_json;

const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::ok: return "ok";
        case SolveStatus::undecidable: return "undecidable";
        case SolveStatus::degenerate: return "degenerate";
    }
    return "unknown";
}

const char* cub_mode_name(CubMode m) {
    switch (m) {
        case CubMode::guaranteed: return "guaranteed";
        case CubMode::paper_style: return "paper";
        case CubMode::override_value: return "override";
    }
    return "unknown";
}

}  // namespace

std::string report_to_json(const SolveReport& rep) {
    ordered_json j;
    j["status"] = status_name(rep.status);
    j["problem"] = {{"n", rep.n}, {"d", rep.d}, {"m", rep.m}};
    j["params"] = {{"l", rep.l},
                   {"shots", rep.shots},
                   {"seed", rep.seed},
                   {"exact_readout", rep.exact_readout},
                   {"target_success", rep.target_success}};
    j["cub"] = {{"value", rep.cub.value},
                {"mode_used", cub_mode_name(rep.cub.mode_used)},
                {"certified", rep.cub.certified},
                {"uncertified_warning", rep.cub.uncertified_warning}};
    j["stage1"] = {{"qubit_pattern_before", rep.qubit_pattern_before},
                   {"qubit_pattern_after", rep.qubit_pattern_after},
                   {"target_probability_initial", rep.target_prob_initial},
                   {"target_probability_final", rep.target_prob_final},
                   {"grover_iterations", rep.grover_iterations},
                   {"gamma_mass", rep.diagnosis.gamma_mass},
                   {"gamma_max", rep.diagnosis.gamma_max},
                   {"suggested_relaxation", rep.diagnosis.suggested_relaxation},
                   {"undecidable", rep.diagnosis.undecidable},
                   {"collapse_probability", rep.collapse_probability}};
    j["feasible"] = {{"count", rep.feasible.size()},
                     {"indices", rep.feasible},
                     {"assignments", rep.feasible_assignments},
                     {"costs", rep.feasible_costs}};
    j["stage2"] = {{"feasible_before", rep.feasible_before},
                   {"feasible_after", rep.feasible_after},
                   {"joint_conditional", rep.joint_conditional},
                   {"p0", rep.p0},
                   {"exact_phase_conditional", rep.exact_phase_conditional},
                   {"exact_phase_p0", rep.exact_phase_p0}};
    j["optimum"] = {{"y", rep.optimum_y},
                    {"assignment", rep.optimum_assignment},
                    {"cost", rep.optimum_cost},
                    {"estimated_cost", rep.estimated_cost}};
    j["success"] = {{"p_success", rep.p_success},
                    {"repetitions", rep.reps.count},
                    {"repetitions_finite", rep.reps.finite},
                    {"repetitions_boundary", rep.reps.boundary}};
    j["diagnosis"] = {{"resolution_defined", rep.resolution_defined},
                      {"resolvable", rep.resolution.resolvable},
                      {"resolution_margin", rep.resolution.margin},
                      {"excluded_branch_mass", rep.excluded_branch_mass},
                      {"excluded_branch_warning", rep.excluded_branch_warning},
                      {"boundary_warning_constraints", rep.boundary_warning_constraints},
                      {"rational_comparisons", rep.rational_comparisons},
                      {"resample_attempts", rep.resample_attempts}};
    return j.dump(2) + "\n";
}

void write_report_json(const std::string& path, const SolveReport& rep) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << report_to_json(rep);
}

void write_distributions_csv(const std::string& path, const SolveReport& rep) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "series,basis_index,probability\n";
    char buf[64];
    auto emit = [&](const char* series, std::uint64_t idx, double prob) {
        std::snprintf(buf, sizeof buf, "%.17g", prob);
        out << series << ',' << idx << ',' << buf << '\n';
    };
    for (std::size_t q = 0; q < rep.qubit_pattern_before.size(); ++q)
        emit("qubit_pattern_before", q, rep.qubit_pattern_before[q]);
    for (std::size_t q = 0; q < rep.qubit_pattern_after.size(); ++q)
        emit("qubit_pattern_after", q, rep.qubit_pattern_after[q]);
    for (std::size_t s = 0; s < rep.feasible_before.size(); ++s)
        emit("feasible_before", rep.feasible[s], rep.feasible_before[s]);
    for (std::size_t s = 0; s < rep.feasible_after.size(); ++s)
        emit("feasible_after", rep.feasible[s], rep.feasible_after[s]);
}

}  // namespace qipsim
