#pragma once

#include <string>
#include <vector>

#include "probeable/grader.hpp"

namespace probeable {

/// Matrix cell for one omission: class_pass, simple_only, fail or error.
std::string_view matrix_cell(const OmissionVerdict& v);

/// team,problem,attempt,base,<problem.omission>...,catch_all
std::vector<std::string> matrix_columns(const Bank& bank);

/// One row per report, sorted by team, bank problem order, then attempt.
/// Omission columns of other problems are left empty.
std::string matrix_csv(const Bank& bank, const std::vector<EvalReport>& reports);

/// problem,category,fraction rows.
std::string heatmap_csv(const std::vector<HeatmapCell>& cells);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

}  // namespace probeable
