#include "wsxy/problem.hpp"

#include <cmath>
#include <stdexcept>

#include "wsxy/parallel.hpp"

namespace wsxy {

void QuadraticObjective::add_linear(int v, double w) {
    if (v < 0) throw std::invalid_argument("objective: negative variable id");
    if (w == 0.0) return;
    linear_[v] += w;
}

void QuadraticObjective::add_quadratic(int u, int v, double w) {
    if (u == v) throw std::invalid_argument("objective: quadratic key must pair distinct variables");
    if (u < 0 || v < 0) throw std::invalid_argument("objective: negative variable id");
    if (w == 0.0) return;
    if (u > v) std::swap(u, v);
    quadratic_[{u, v}] += w;
}

double OneHotProblem::evaluate_bits(const std::vector<std::uint8_t>& bits) const {
    if (static_cast<int>(bits.size()) != layout.num_variables())
        throw std::invalid_argument("evaluate: bitstring length mismatch");
    double e = objective.constant();
    for (const auto& [v, w] : objective.linear())
        if (bits[layout.bit_of_var(v)]) e += w;
    for (const auto& [key, w] : objective.quadratic())
        if (bits[layout.bit_of_var(key.first)] && bits[layout.bit_of_var(key.second)]) e += w;
    return e;
}

double evaluate_bitstring(const OneHotProblem& problem, const std::vector<std::uint8_t>& bits) {
    return problem.evaluate_bits(bits);
}

namespace {

// Block-factored evaluation tables: energy(m) = const + sum_l a_l[i_l]
// + sum_{l<m} B_lm[i_l][i_m]. Valid because a quadratic key inside one block
// never has both ends set on a feasible state.
struct FactoredTables {
    double constant = 0.0;
    std::vector<std::vector<double>> linear;                    // per block, per position
    std::vector<std::vector<std::vector<double>>> pair;         // [l][m-l-1] flattened k_l*k_m
};

FactoredTables build_tables(const OneHotProblem& p) {
    const BlockLayout& layout = p.layout;
    const int L = layout.num_blocks();
    std::vector<int> block_of(layout.num_variables(), -1);
    std::vector<int> pos_of(layout.num_variables(), -1);
    for (int l = 0; l < L; ++l)
        for (int q = 0; q < layout.block_size(l); ++q) {
            block_of[layout.qubit_offset(l) + q] = l;
            pos_of[layout.qubit_offset(l) + q] = q;
        }
    const auto bit = [&](int v) { return layout.bit_of_var(v); };

    FactoredTables t;
    t.constant = p.objective.constant();
    t.linear.resize(L);
    for (int l = 0; l < L; ++l) t.linear[l].assign(layout.block_size(l), 0.0);
    t.pair.resize(L);
    for (int l = 0; l < L; ++l) {
        t.pair[l].resize(L - l - 1);
        for (int m = l + 1; m < L; ++m)
            t.pair[l][m - l - 1].assign(
                static_cast<std::size_t>(layout.block_size(l)) * layout.block_size(m), 0.0);
    }
    for (const auto& [v, w] : p.objective.linear()) t.linear[block_of[bit(v)]][pos_of[bit(v)]] += w;
    for (const auto& [key, w] : p.objective.quadratic()) {
        int bl = block_of[bit(key.first)], bm = block_of[bit(key.second)];
        int pl = pos_of[bit(key.first)], pm = pos_of[bit(key.second)];
        if (bl == bm) continue;  // zero on every feasible state
        if (bl > bm) {
            std::swap(bl, bm);
            std::swap(pl, pm);
        }
        t.pair[bl][bm - bl - 1][static_cast<std::size_t>(pl) * layout.block_size(bm) + pm] += w;
    }
    return t;
}

}  // namespace

CostDiagonal build_cost_diagonal(const OneHotProblem& problem, std::uint64_t dim_cap) {
    const BlockLayout& layout = problem.layout;
    const std::uint64_t dim = layout.dimension();
    if (dim > dim_cap) throw std::runtime_error("build_cost_diagonal: dimension cap exceeded");

    const FactoredTables t = build_tables(problem);
    const int L = layout.num_blocks();
    CostDiagonal diag;
    diag.values.assign(dim, 0.0);

    parallel_for(std::min<std::uint64_t>(dim, 64), [&](std::size_t chunk) {
        const std::uint64_t n_chunks = std::min<std::uint64_t>(dim, 64);
        const std::uint64_t lo = dim * chunk / n_chunks;
        const std::uint64_t hi = dim * (chunk + 1) / n_chunks;
        std::vector<int> multi(L);
        for (std::uint64_t m = lo; m < hi; ++m) {
            for (int l = 0; l < L; ++l) multi[l] = layout.position_of(l, m);
            double e = t.constant;
            for (int l = 0; l < L; ++l) {
                e += t.linear[l][multi[l]];
                for (int r = l + 1; r < L; ++r)
                    e += t.pair[l][r - l - 1][static_cast<std::size_t>(multi[l]) *
                                                  layout.block_size(r) +
                                              multi[r]];
            }
            diag.values[m] = e;
        }
    });

    diag.e_opt = diag.values[0];
    for (double v : diag.values) diag.e_opt = std::min(diag.e_opt, v);
    const double tol = 1e-9;
    for (std::uint64_t m = 0; m < dim; ++m)
        if (diag.values[m] <= diag.e_opt + tol) diag.optima.push_back(m);
    return diag;
}

BruteForceResult brute_force_optimum(const OneHotProblem& problem, std::uint64_t dim_cap) {
    const BlockLayout& layout = problem.layout;
    const std::uint64_t dim = layout.dimension();
    if (dim > dim_cap) throw std::runtime_error("brute_force_optimum: dimension cap exceeded");
    BruteForceResult r;
    std::vector<double> vals(dim);
    for (std::uint64_t m = 0; m < dim; ++m)
        vals[m] = problem.evaluate_bits(layout.index_to_bitstring(m));
    r.e_opt = vals[0];
    for (double v : vals) r.e_opt = std::min(r.e_opt, v);
    for (std::uint64_t m = 0; m < dim; ++m)
        if (vals[m] <= r.e_opt + 1e-9) r.optima.push_back(m);
    return r;
}

}  // namespace wsxy
