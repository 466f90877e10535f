#pragma once

#include <string>

#include "pharmonic/function.hpp"
#include "pharmonic/harmonic.hpp"
#include "pharmonic/inequalities.hpp"
#include "pharmonic/solver.hpp"

namespace pharmonic {

/// {family, radius, n_vertices, edges:[[i, s_label, j]...], boundary:[...]}.
/// Edges are listed per ordered (vertex, generator) pair with an in-ball
/// neighbor, ordered by vertex then generator: deterministic bytes.
std::string ball_to_json(const Group& group, const CayleyBall& ball, int indent = -1);

/// {ball_ref, values:[...]}.
std::string function_to_json(const GraphFunction& f, const std::string& ball_ref, int indent = -1);

/// One "normal_form,value" row per vertex, normal forms quoted.
std::string function_to_csv(const Group& group, const GraphFunction& f);

std::string solve_report_to_json(const SolveReport& report, int indent = -1);
std::string harmonic_report_to_json(const HarmonicReport& report, int indent = -1);
std::string inequality_report_to_json(const InequalityReport& report, int indent = -1);
std::string folner_records_to_csv(const std::vector<FolnerRecord>& records);
std::string z_example_to_json(const ZExampleReport& report, int indent = -1);

/// Write-temp-then-rename so readers never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& contents);

} // namespace pharmonic
