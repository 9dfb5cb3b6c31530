#include "wsxy/repair.hpp"

#include <cmath>
#include <stdexcept>

namespace wsxy {

int count_violations(const BlockLayout& layout, const std::vector<std::uint8_t>& bits) {
    if (static_cast<int>(bits.size()) != layout.num_variables())
        throw std::invalid_argument("count_violations: length mismatch");
    int violations = 0;
    for (int l = 0; l < layout.num_blocks(); ++l) {
        int sum = 0;
        for (int p = 0; p < layout.block_size(l); ++p) sum += bits[layout.qubit_offset(l) + p];
        if (sum != 1) ++violations;
    }
    return violations;
}

RepairResult greedy_repair(const OneHotProblem& problem, const std::vector<std::uint8_t>& bits,
                           double lambda) {
    const BlockLayout& layout = problem.layout;
    const int n = layout.num_variables();
    if (static_cast<int>(bits.size()) != n)
        throw std::invalid_argument("greedy_repair: length mismatch");

    // adjacency over quadratic terms (bit-indexed), plus the lambda adequacy guard
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    std::vector<double> lin(n, 0.0);
    std::vector<double> row_abs(n, 0.0);
    for (const auto& [v, w] : problem.objective.linear()) lin[layout.bit_of_var(v)] += w;
    for (const auto& [key, w] : problem.objective.quadratic()) {
        const int u = layout.bit_of_var(key.first);
        const int v = layout.bit_of_var(key.second);
        adj[u].push_back({v, w});
        adj[v].push_back({u, w});
        row_abs[u] += std::abs(w);
        row_abs[v] += std::abs(w);
    }
    double max_row = 0.0;
    for (int v = 0; v < n; ++v) max_row = std::max(max_row, row_abs[v] + std::abs(lin[v]));

    std::vector<int> block_of(n, -1);
    for (int l = 0; l < layout.num_blocks(); ++l)
        for (int p = 0; p < layout.block_size(l); ++p)
            block_of[layout.qubit_offset(l) + p] = l;

    RepairResult result;
    result.bits = bits;
    result.lambda_adequate = lambda > max_row;

    std::vector<int> block_sum(layout.num_blocks(), 0);
    for (int v = 0; v < n; ++v)
        if (result.bits[v]) ++block_sum[block_of[v]];

    const auto flip_delta = [&](int v) {
        const int s = result.bits[v] ? -1 : 1;
        double d = s * lin[v];
        for (const auto& [u, w] : adj[v])
            if (result.bits[u]) d += s * w;
        const int m = block_sum[block_of[v]];
        const double before = 1.0 - m, after = 1.0 - (m + s);
        d += lambda * (after * after - before * before);
        return d;
    };

    double cost = problem.evaluate_bits(result.bits);
    for (int l = 0; l < layout.num_blocks(); ++l) {
        const double gap = 1.0 - block_sum[l];
        cost += lambda * gap * gap;
    }

    while (true) {  // strict decrease forbids revisits, so this terminates
        int best_v = -1;
        double best_d = -1e-12;  // only genuine decreases count
        for (int v = 0; v < n; ++v) {
            const double d = flip_delta(v);
            if (d < best_d) {  // ties keep the lowest variable index
                best_d = d;
                best_v = v;
            }
        }
        if (best_v < 0) break;
        const int s = result.bits[best_v] ? -1 : 1;
        result.bits[best_v] ^= 1;
        block_sum[block_of[best_v]] += s;
        cost += best_d;
        result.flips.push_back(best_v);
        result.cost_trace.push_back(cost);
    }
    return result;
}

std::vector<std::uint8_t> corrupt_sample(const std::vector<std::uint8_t>& bits, double f_bit,
                                         Rng& rng) {
    if (!(f_bit >= 0.0 && f_bit < 1.0))
        throw std::invalid_argument("corrupt_sample: f_bit must lie in [0, 1)");
    std::vector<std::uint8_t> out = bits;
    for (auto& b : out)
        if (rng.uniform() < f_bit) b ^= 1;
    return out;
}

}  // namespace wsxy
