#include "wsxy/synth.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "wsxy/mixer.hpp"

namespace wsxy {

PrepStyle prep_style_from_string(const std::string& name) {
    if (name == "linear") return PrepStyle::Linear;
    if (name == "center") return PrepStyle::Center;
    if (name == "tree") return PrepStyle::Tree;
    throw std::invalid_argument("unknown preparation style: " + name);
}

namespace {

double acos_root(double q) { return 2.0 * std::acos(std::sqrt(std::clamp(q, 0.0, 1.0))); }

// Parameterised swap pair: cry(2 acos sqrt(q)) i->j then cx j->i. Maps
// |e_i> to sqrt(q)|e_i> + sqrt(1-q)|e_j> and leaves |0..0> alone.
void emit_pswap(Circuit& c, int i, int j, double q) {
    c.add(GateKind::CRY, {i, j}, {acos_root(q)});
    c.add(GateKind::CNOT, {j, i});
}

Circuit synth_wp_linear(const std::vector<double>& P) {
    const int k = static_cast<int>(P.size());
    Circuit c;
    c.n = k;
    c.add(GateKind::X, {0});
    double remaining = 1.0;
    for (int i = 0; i + 1 < k; ++i) {
        emit_pswap(c, i, i + 1, P[i] / remaining);
        remaining -= P[i];
    }
    return c;
}

Circuit synth_wp_center(const std::vector<double>& P) {
    const int k = static_cast<int>(P.size());
    const int center = k / 2;
    double mass_left = 0.0, mass_right = 0.0;
    for (int i = 0; i < center; ++i) mass_left += P[i];
    for (int i = center + 1; i < k; ++i) mass_right += P[i];

    Circuit c;
    c.n = k;
    c.add(GateKind::X, {center});
    // left split: the control is deterministically |1>, so a plain ry does
    c.add(GateKind::RY, {center - 1}, {acos_root(1.0 - mass_left)});
    c.add(GateKind::CNOT, {center - 1, center});
    if (mass_right > 0.0) {
        // right split without touching the left tail: rotate within the
        // one-excitation sector of (center, center+1), then cancel the i
        const double stay = P[center] / (P[center] + mass_right);
        c.add(GateKind::XXplusYY, {center, center + 1}, {acos_root(stay)});
        c.add(GateKind::Phase, {center + 1}, {-std::numbers::pi / 2});
    }
    // both chains act on disjoint qubit ranges and schedule in parallel
    double left_remaining = mass_left;
    for (int i = center - 1; i > 0; --i) {
        emit_pswap(c, i, i - 1, P[i] / left_remaining);
        left_remaining -= P[i];
    }
    double right_remaining = mass_right;
    for (int i = center + 1; i + 1 < k; ++i) {
        emit_pswap(c, i, i + 1, P[i] / right_remaining);
        right_remaining -= P[i];
    }
    return c;
}

}  // namespace

Circuit synth_wp_preparation(const std::vector<double>& P, PrepStyle style) {
    if (P.size() < 2) throw std::invalid_argument("synth_wp_preparation: need k >= 2");
    double sum = 0.0;
    for (double p : P) {
        if (!(p > 0.0)) throw std::invalid_argument("synth_wp_preparation: entries must be > 0");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("synth_wp_preparation: probabilities must sum to 1");
    switch (style) {
        case PrepStyle::Linear: return synth_wp_linear(P);
        case PrepStyle::Center: return synth_wp_center(P);
        case PrepStyle::Tree:
            throw std::invalid_argument(
                "synth_wp_preparation: tree style is recognised but not implemented "
                "(requires all-to-all connectivity)");
    }
    throw std::logic_error("unreachable");
}

Circuit synth_ws_xy_block(double q, double beta, bool scaled) {
    Circuit c;
    c.n = 2;
    double b = beta;
    if (scaled) b = scaled_block_params(q, beta).beta_scaled;
    const BlockAngles a = ws_xy_block_angles(q, b);
    c.add(GateKind::RZ, {0}, {-a.phi1});
    c.add(GateKind::XXplusYY, {0, 1}, {2.0 * a.phi2});
    c.add(GateKind::RZ, {1}, {a.phi1});
    if (scaled) {
        const double phi = scaled_block_params(q, beta).phi_sector;
        c.add(GateKind::Phase, {0}, {phi});
        c.add(GateKind::Phase, {1}, {phi});
    }
    return c;
}

namespace {

void emit_cost_layer(Circuit& c, const OneHotProblem& problem, double gamma) {
    // exp(-i gamma w x_u x_v) and exp(-i gamma w x_u) on the 0/1 encoding;
    // the scalar remainders accumulate into the circuit's global phase
    const BlockLayout& layout = problem.layout;
    double phase = -gamma * problem.objective.constant();
    for (const auto& [v, w] : problem.objective.linear()) {
        c.add(GateKind::RZ, {layout.bit_of_var(v)}, {-gamma * w});
        phase += -gamma * w / 2.0;
    }
    for (const auto& [key, w] : problem.objective.quadratic()) {
        const int qu = layout.bit_of_var(key.first);
        const int qv = layout.bit_of_var(key.second);
        c.add(GateKind::RZZ, {qu, qv}, {gamma * w / 2.0});
        c.add(GateKind::RZ, {qu}, {-gamma * w / 2.0});
        c.add(GateKind::RZ, {qv}, {-gamma * w / 2.0});
        phase += -gamma * w / 4.0;
    }
    c.global_phase += phase;
}

void emit_mixer_layer(Circuit& c, const BlockLayout& layout, const MixerTopology& topo,
                      const ProbabilityTable& P, double beta, const QaoaOpts& opts) {
    for (int l = 0; l < layout.num_blocks(); ++l) {
        const BlockGraph& g = topo.blocks[l];
        const int off = layout.qubit_offset(l);
        const double beta_layer = beta / (opts.trotter_steps * g.max_degree);
        const double lead =
            beta * (g.num_colors() - g.max_degree) / (opts.trotter_steps * g.max_degree);
        std::vector<char> matched(g.k, 0);
        for (int t = 0; t < opts.trotter_steps; ++t) {
            c.global_phase += -lead;
            for (const Matching& layer : g.coloring) {
                std::fill(matched.begin(), matched.end(), 0);
                for (const auto& [i, j] : layer) {
                    const double q = derive_pair_bias(P.rows[l], i, j);
                    Circuit block = synth_ws_xy_block(q, beta_layer, opts.scaled_blocks);
                    // block qubit 0 -> position i, qubit 1 -> position j
                    for (const auto& gt : block.gates) {
                        std::vector<int> qs;
                        for (int bq : gt.qubits) qs.push_back(off + (bq == 0 ? i : j));
                        c.add(gt.kind, std::move(qs), gt.params);
                    }
                    matched[i] = matched[j] = 1;
                }
                for (int i = 0; i < g.k; ++i)
                    if (!matched[i]) c.add(GateKind::Phase, {off + i}, {beta_layer});
            }
        }
    }
}

}  // namespace

Circuit synth_ws_qaoa(const OneHotProblem& problem, const MixerTopology& topo,
                      const ProbabilityTable& P, const LinearSchedule& schedule,
                      const QaoaOpts& opts, PrepStyle style) {
    const BlockLayout& layout = problem.layout;
    topo.validate(layout);
    P.validate(layout);
    Circuit c;
    c.n = layout.num_variables();
    for (int l = 0; l < layout.num_blocks(); ++l)
        c.append(synth_wp_preparation(P.rows[l], style), layout.qubit_offset(l));
    const ProbabilityTable mixer_P = opts.mixer_biased ? P : uniform_table(layout);
    if (schedule.p > 0) {
        for (const auto& [beta, gamma] : schedule.expand()) {
            emit_cost_layer(c, problem, gamma);
            emit_mixer_layer(c, layout, topo, mixer_P, beta, opts);
        }
    }
    return c;
}

std::uint64_t feasible_dense_index(const BlockLayout& layout, std::uint64_t index) {
    const int n = layout.num_variables();
    std::uint64_t dense = 0;
    for (int l = 0; l < layout.num_blocks(); ++l) {
        const int q = layout.qubit_offset(l) + layout.position_of(l, index);
        dense |= 1ULL << (n - 1 - q);
    }
    return dense;
}

FeasibleProjection project_feasible(const BlockLayout& layout, const std::vector<cplxv>& dense) {
    if (dense.size() != (1ULL << layout.num_variables()))
        throw std::invalid_argument("project_feasible: dense vector size mismatch");
    FeasibleProjection out;
    out.amplitudes.resize(layout.dimension());
    double inside = 0.0;
    for (std::uint64_t m = 0; m < layout.dimension(); ++m) {
        out.amplitudes[m] = dense[feasible_dense_index(layout, m)];
        inside += std::norm(out.amplitudes[m]);
    }
    double total = 0.0;
    for (const auto& a : dense) total += std::norm(a);
    out.leakage = total - inside;
    return out;
}

}  // namespace wsxy
