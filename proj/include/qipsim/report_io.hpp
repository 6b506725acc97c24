/*
 * Machine-readable outputs: report.json (schema in docs/report.schema.json)
 * and the tidy distributions.csv with the four bar series.
 */
#pragma once

#include <string>

#include "qipsim/cost_optimizer.hpp"

namespace qipsim {

std::string report_to_json(const SolveReport& rep);

void write_report_json(const std::string& path, const SolveReport& rep);

// series,basis_index,probability with the blocks qubit_pattern_before,
// qubit_pattern_after, feasible_before, feasible_after. Each series column
// sums to 1 up to rounding.
void write_distributions_csv(const std::string& path, const SolveReport& rep);

}  // namespace qipsim
