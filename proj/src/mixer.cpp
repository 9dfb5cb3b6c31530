#include "wsxy/mixer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wsxy {

double derive_pair_bias(const std::vector<double>& P, int i, int j) {
    if (i < 0 || j < 0 || i >= static_cast<int>(P.size()) || j >= static_cast<int>(P.size()) ||
        i == j)
        throw std::out_of_range("derive_pair_bias: invalid position pair");
    return P[i] / (P[i] + P[j]);
}

WsMixerMatrix build_ws_hamiltonian(const BlockGraph& g, const std::vector<double>& P) {
    if (g.edges.empty()) throw std::invalid_argument("build_ws_hamiltonian: empty edge set");
    if (static_cast<int>(P.size()) != g.k)
        throw std::invalid_argument("build_ws_hamiltonian: size mismatch");
    const double inv_d = 1.0 / g.max_degree;
    WsMixerMatrix M;
    M.k = g.k;
    M.m = Eigen::MatrixXcd::Zero(g.k, g.k);
    for (int i = 0; i < g.k; ++i)
        M.m(i, i) = inv_d * (g.degree[i] - g.max_degree);
    for (const auto& [i, j] : g.edges) {
        const double s = P[i] + P[j];
        M.m(i, j) = M.m(j, i) = -inv_d * 2.0 * std::sqrt(P[i] * P[j]) / s;
        M.m(i, i) += inv_d * (P[j] - P[i]) / s;
        M.m(j, j) += inv_d * (P[i] - P[j]) / s;
    }
    return M;
}

BlockAngles ws_xy_block_angles(double q, double beta) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("ws_xy_block_angles: q outside (0,1)");
    BlockAngles a;
    a.phi1 = std::atan2((1.0 - 2.0 * q) * std::sin(beta), std::cos(beta));
    a.phi2 = std::asin(std::clamp(2.0 * std::sqrt(q * (1.0 - q)) * std::sin(beta), -1.0, 1.0));
    return a;
}

ScaledBlockParams scaled_block_params(double q, double beta) {
    constexpr double kGuard = 1e-12;
    if (!(q >= kGuard && q <= 1.0 - kGuard))
        throw std::invalid_argument("scaled_block_params: q outside guard band");
    const double s = 1.0 / (2.0 * std::sqrt(q * (1.0 - q)));
    return {beta * s, (1.0 - s) * beta};
}

Mat2 ws_pair_unitary(double q, double beta, bool scaled) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("ws_pair_unitary: q outside (0,1)");
    double b = beta;
    cplx sector(1.0, 0.0);
    if (scaled) {
        const auto sp = scaled_block_params(q, beta);
        b = sp.beta_scaled;
        sector = std::polar(1.0, sp.phi_sector);
    }
    // exp(-i b H(q)) = cos(b) I - i sin(b) H(q); H(q) has eigenvalues +-1.
    const double z = 1.0 - 2.0 * q;              // diagonal of H(q) at e_i
    const double x = -2.0 * std::sqrt(q * (1.0 - q));  // off-diagonal
    const double cb = std::cos(b), sb = std::sin(b);
    Mat2 U;
    U.a = sector * cplx(cb, -sb * z);
    U.b = sector * cplx(0.0, -sb * x);
    U.c = U.b;
    U.d = sector * cplx(cb, sb * z);
    return U;
}

void apply_ws_mixer(SubspaceState& state, const MixerTopology& topo,
                    const ProbabilityTable& P, double beta, int trotter_steps, bool scaled) {
    const BlockLayout& layout = state.layout();
    topo.validate(layout);
    if (P.num_blocks() != layout.num_blocks())
        throw std::invalid_argument("apply_ws_mixer: probability table mismatch");
    if (trotter_steps < 1) throw std::invalid_argument("apply_ws_mixer: trotter steps must be >= 1");

    for (int l = 0; l < layout.num_blocks(); ++l) {
        const BlockGraph& g = topo.blocks[l];
        const auto& Pl = P.rows[l];
        const double beta_layer = beta / (trotter_steps * g.max_degree);
        const double lead = beta * (g.num_colors() - g.max_degree) /
                            (trotter_steps * g.max_degree);
        const cplx lead_factor = std::polar(1.0, -lead);
        const cplx idle_factor = std::polar(1.0, beta_layer);
        std::vector<char> matched(g.k, 0);
        for (int t = 0; t < trotter_steps; ++t) {
            if (lead != 0.0) scale_state(state, lead_factor);
            for (const Matching& layer : g.coloring) {
                std::fill(matched.begin(), matched.end(), 0);
                for (const auto& [i, j] : layer) {
                    const double q = derive_pair_bias(Pl, i, j);
                    apply_pair_rotation(state, l, i, j, ws_pair_unitary(q, beta_layer, scaled));
                    matched[i] = matched[j] = 1;
                }
                for (int i = 0; i < g.k; ++i)
                    if (!matched[i]) scale_basis(state, l, i, idle_factor);
            }
        }
    }
}

Eigen::MatrixXcd exact_mixer_evolution(const WsMixerMatrix& M, double beta) {
    if (M.m.rows() != M.k || M.m.cols() != M.k)
        throw std::invalid_argument("exact_mixer_evolution: malformed matrix");
    if (!M.m.isApprox(M.m.adjoint(), 1e-12))
        throw std::invalid_argument("exact_mixer_evolution: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M.m);
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    Eigen::VectorXcd phases(M.k);
    for (int i = 0; i < M.k; ++i) phases(i) = std::polar(1.0, -beta * vals(i));
    return vecs * phases.asDiagonal() * vecs.adjoint();
}

}  // namespace wsxy
