#pragma once

#include <string>
#include <vector>

#include "wsxy/circuit.hpp"
#include "wsxy/probability.hpp"
#include "wsxy/problem.hpp"
#include "wsxy/qaoa.hpp"
#include "wsxy/schedule.hpp"
#include "wsxy/topology.hpp"

namespace wsxy {

enum class PrepStyle { Linear, Center, Tree };

PrepStyle prep_style_from_string(const std::string& name);

// State preparation |0..0> -> sum_i sqrt(P_i)|e_i> on k qubits.
// Linear: X then a chain of k-1 parameterised-swap pairs (cry + cx), exactly
// the cascade with parameters P_i / (1 - sum_{j<i} P_j).
// Center: start at qubit floor(k/2) and peel both tails outward; the first
// gate of the left branch drops its redundant control (plain ry), the right
// branch splits off through a single excitation-preserving xx_plus_yy, and
// the two chains run on disjoint qubits. Halves the two-qubit depth.
// Tree is recognised but rejected (needs all-to-all connectivity).
Circuit synth_wp_preparation(const std::vector<double>& P, PrepStyle style);

// Two-qubit pair block: rz(-phi1) on the first qubit, xx_plus_yy(2 phi2),
// rz(phi1) on the second. The scaled variant substitutes the rescaled angle
// and appends p(phi_sector) on both qubits.
Circuit synth_ws_xy_block(double q, double beta, bool scaled);

// Full state-output circuit: per-block preparations, then p layers of cost
// phases (rzz/rz plus global-phase bookkeeping on the 0/1 encoding) and the
// coloured mixer layers (pair blocks + phase gates on idle positions).
// Gate-for-gate mirror of the subspace evolution.
Circuit synth_ws_qaoa(const OneHotProblem& problem, const MixerTopology& topo,
                      const ProbabilityTable& P, const LinearSchedule& schedule,
                      const QaoaOpts& opts = {}, PrepStyle style = PrepStyle::Linear);

// Dense index of a feasible multi-index under the qubit-0-is-MSB convention.
std::uint64_t feasible_dense_index(const BlockLayout& layout, std::uint64_t index);

struct FeasibleProjection {
    std::vector<cplxv> amplitudes;  // subspace amplitudes, linear multi-index order
    double leakage = 0.0;           // probability mass outside the feasible set
};

FeasibleProjection project_feasible(const BlockLayout& layout, const std::vector<cplxv>& dense);

}  // namespace wsxy
