#pragma once

#include <string>
#include <vector>

#include "minkolab/measure.hpp"
#include "minkolab/polytope.hpp"
#include "minkolab/solver.hpp"
#include "minkolab/stability.hpp"

namespace minkolab {

// Doubles are emitted with 17 significant digits so outputs are reproducible
// byte for byte and round-trip exactly.
std::string format_double(double v);

std::string measure_to_json(const DirectionalMeasure& mu);
DirectionalMeasure measure_from_json(const std::string& text);
DirectionalMeasure load_measure(const std::string& path);
void save_measure(const DirectionalMeasure& mu, const std::string& path);

std::string polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const std::string& text);  // vertices recomputed, never trusted
Polytope load_polytope(const std::string& path);
void save_polytope(const Polytope& p, const std::string& path);

std::string solve_report_to_json(const SolveReport& rep);
std::string deficit_report_to_json(const DeficitReport& rep);
std::string radius_report_to_json(const RadiusBoundReport& rep);

std::string sweep_to_csv(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> sweep_from_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace minkolab
