#pragma once

#include <ostream>
#include <vector>

#include "wsxy/state.hpp"

namespace wsxy {

// r = 1 - |E - E_opt| / |E_opt|. Throws for E_opt = 0 (undefined ratio).
double approximation_ratio(double e, double e_opt);

// Probability mass on the optimal multi-indices.
double p_opt(const SubspaceState& state, const CostDiagonal& diag);

// Product-distribution variant for the classical sampling baseline: the
// chance that independently drawing each block from P hits an optimum.
double p_opt_classical(const BlockLayout& layout, const ProbabilityTable& P,
                       const CostDiagonal& diag);

// Expected best energy after s shots from the fixed distribution |state|^2:
//   E_0 = <state|diag|state>,  E_s = sum_x p_x min(C(x), E_{s-1}).
// Returns E_1..E_S and the matching ratios r_1..r_S.
struct BestTrace {
    std::vector<double> energy;
    std::vector<double> ratio;
};

BestTrace expected_best_trace(const SubspaceState& state, const CostDiagonal& diag, int s);

// Prefix minima of an observed energy stream.
std::vector<double> empirical_best_trace(const std::vector<double>& energies);

// CSV emitters; headers are part of the file contract.
void write_best_energy_csv(std::ostream& os, const std::vector<double>& best);  // shot,best_energy
void write_ratio_trace_csv(std::ostream& os, const BestTrace& trace);           // s,r_s

}  // namespace wsxy
