#pragma once

#include <Eigen/Dense>

#include "wsxy/probability.hpp"
#include "wsxy/state.hpp"
#include "wsxy/topology.hpp"

namespace wsxy {

// Pair bias q_ij = P_i / (P_i + P_j); the complement pair uses 1 - q_ij.
double derive_pair_bias(const std::vector<double>& P, int i, int j);

// Warm-started mixer Hamiltonian of one block, restricted to the
// one-excitation basis {|e_1>, ..., |e_k>}:
//   off-diagonal (i,j) in E:  -(1/D) * 2 sqrt(P_i P_j) / (P_i + P_j)
//   diagonal i:  (1/D) * [ sum_{j in N(i)} (P_j - P_i)/(P_i + P_j) + deg(i) - D ]
// with D the graph's maximum degree. For connected graphs the minimal
// eigenvalue is -1 with unique ground vector (sqrt(P_1), ..., sqrt(P_k)).
struct WsMixerMatrix {
    int k = 0;
    Eigen::MatrixXcd m;
};

WsMixerMatrix build_ws_hamiltonian(const BlockGraph& g, const std::vector<double>& P);

// Angles of the two-rotation decomposition of the pair block exp(-i beta H(q)):
//   phi1 = arctan2((1-2q) sin beta, cos beta)
//   phi2 = arcsin(2 sqrt(q(1-q)) sin beta)
struct BlockAngles {
    double phi1 = 0.0;
    double phi2 = 0.0;
};

BlockAngles ws_xy_block_angles(double q, double beta);

// Parameters of the rescaled pair block exp(-i beta H~(q)) with
// H~(q) = (H(q) + I_xy) / (2 sqrt(q(1-q))) - I_xy:
//   beta_scaled = beta / (2 sqrt(q(1-q)))
//   phi_sector  = (1 - 1/(2 sqrt(q(1-q)))) * beta
// The block equals the plain block at beta_scaled followed by the factor
// exp(+i phi_sector) on both involved one-excitation amplitudes.
struct ScaledBlockParams {
    double beta_scaled = 0.0;
    double phi_sector = 0.0;
};

ScaledBlockParams scaled_block_params(double q, double beta);

// 2x2 unitary of the pair block in the (e_i, e_j) amplitude ordering:
// exp(-i beta H(q)), or exp(-i beta H~(q)) when scaled.
Mat2 ws_pair_unitary(double q, double beta, bool scaled);

// T-step product formula for the block mixers exp(-i beta H_P^G), applied to
// every block of the state. Each step multiplies in the leading factor
// exp(-i beta (|colors| - D) / (T D)), then walks the colouring: pair blocks
// on matched positions (scaled variant when requested) and the factor
// exp(+i beta / (T D)) on unmatched positions. On |W_P> the net effect is the
// phase exp(+i beta) for any T.
void apply_ws_mixer(SubspaceState& state, const MixerTopology& topo,
                    const ProbabilityTable& P, double beta, int trotter_steps = 1,
                    bool scaled = true);

// exp(-i beta M) via Hermitian eigendecomposition; verification oracle for
// the product formula above.
Eigen::MatrixXcd exact_mixer_evolution(const WsMixerMatrix& M, double beta);

}  // namespace wsxy
