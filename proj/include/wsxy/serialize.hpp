#pragma once

#include <string>

#include "wsxy/hardware.hpp"
#include "wsxy/probability.hpp"
#include "wsxy/problem.hpp"

namespace wsxy {

// Problem document:
// {
//   "schema": "wsxy.problem/1",
//   "family": "...", "provenance": {...},
//   "objective": {"constant": c, "linear": [[var, w], ...],
//                 "quadratic": [[u, v, w], ...]},
//   "blocks": [[var, ...], ...],
//   "fixed": [[var, value], ...],
//   "labels": ["...", ...]            (optional)
// }
std::string problem_to_json(const OneHotProblem& problem);
OneHotProblem problem_from_json(const std::string& text);

void save_problem(const OneHotProblem& problem, const std::string& path);
OneHotProblem load_problem(const std::string& path);

// Coupling map document:
// {"nodes": [{"id": 0, "readout_error": 0.01}, ...],
//  "edges": [{"u": 0, "v": 1, "error": 0.005}, ...]}
HardwareMap hardware_map_from_json(const std::string& text);
std::string hardware_map_to_json(const HardwareMap& map);
HardwareMap load_hardware_map(const std::string& path);

// Probability table: {"rows": [[...], ...], "clamp_eps": e | null}
std::string table_to_json(const ProbabilityTable& table);
ProbabilityTable table_from_json(const std::string& text);

}  // namespace wsxy
