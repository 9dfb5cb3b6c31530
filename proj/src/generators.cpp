#include "wsxy/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wsxy/rng.hpp"

namespace wsxy {

double weight_from_grid_index(int i) {
    if (i < 0 || i > 20) throw std::out_of_range("weight grid index");
    return (i - 10) / 10.0;
}

OneHotProblem gen_max_k_cut(int n, int k, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("gen_max_k_cut: n must be >= 3");
    if (k < 2) throw std::invalid_argument("gen_max_k_cut: k must be >= 2");

    Rng rng(seed);
    // nodes are 1-based; node 1 is fixed to category 1
    const auto var = [&](int v, int cat) { return (v - 2) * k + cat; };  // v >= 2, cat 0-based

    OneHotProblem p;
    p.family = "mkc";
    p.provenance = "{\"n\":" + std::to_string(n) + ",\"k\":" + std::to_string(k) +
                   ",\"seed\":" + std::to_string(seed) + "}";

    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) {
            const double w = weight_from_grid_index(static_cast<int>(rng.uniform_int(21)));
            if (u == 1) {
                p.objective.add_linear(var(v, 0), w);  // x_{1,1} = 1 pairs with x_{v,1}
            } else {
                for (int cat = 0; cat < k; ++cat)
                    p.objective.add_quadratic(var(u, cat), var(v, cat), w);
            }
        }
    }

    std::vector<Block> blocks;
    for (int v = 2; v <= n; ++v) {
        Block b;
        b.id = v - 2;
        for (int cat = 0; cat < k; ++cat) b.vars.push_back(var(v, cat));
        blocks.push_back(std::move(b));
    }
    p.layout = BlockLayout(std::move(blocks));

    const int fixed_base = (n - 1) * k;
    for (int cat = 0; cat < k; ++cat)
        p.fixed.push_back({fixed_base + cat, static_cast<std::uint8_t>(cat == 0 ? 1 : 0)});

    p.labels.resize(static_cast<std::size_t>(n) * k);
    for (int v = 2; v <= n; ++v)
        for (int cat = 0; cat < k; ++cat)
            p.labels[var(v, cat)] =
                "x[" + std::to_string(v) + "][" + std::to_string(cat + 1) + "]";
    for (int cat = 0; cat < k; ++cat)
        p.labels[fixed_base + cat] = "x[1][" + std::to_string(cat + 1) + "]";
    return p;
}

OneHotProblem gen_tsp(int n, std::uint64_t seed, double lambda) {
    if (n < 4) throw std::invalid_argument("gen_tsp: n must be >= 4");

    Rng rng(seed);
    std::vector<double> xs(n), ys(n);
    int clamped = 0;
    for (int c = 0; c < n; ++c) {
        const double angle = 2.0 * std::numbers::pi * c / n;
        double radius = 2.0 + rng.normal();
        if (radius < 0.1) {
            radius = 0.1;
            ++clamped;
        }
        xs[c] = radius * std::cos(angle);
        ys[c] = radius * std::sin(angle);
    }
    const auto dist = [&](int u, int v) {  // 1-based city labels
        const double dx = xs[u - 1] - xs[v - 1];
        const double dy = ys[u - 1] - ys[v - 1];
        return std::sqrt(dx * dx + dy * dy);
    };

    // city v >= 2 occupies one of the times 2..n; position p = t - 2
    const int kb = n - 1;
    const auto var = [&](int v, int t) { return (v - 2) * kb + (t - 2); };

    OneHotProblem p;
    p.family = "tsp";
    p.provenance = "{\"n\":" + std::to_string(n) + ",\"seed\":" + std::to_string(seed) +
                   ",\"lambda\":" + std::to_string(lambda) +
                   ",\"radius_clamped\":" + std::to_string(clamped) + "}";

    // tour legs: sum over ordered pairs (u, v) and times t of w_uv x_{u,t} x_{v,t+1}
    for (int u = 2; u <= n; ++u) {
        p.objective.add_linear(var(u, 2), dist(1, u));  // leg out of the fixed city
        p.objective.add_linear(var(u, n), dist(u, 1));  // closing leg back to it
        for (int v = 2; v <= n; ++v) {
            if (u == v) continue;
            for (int t = 2; t + 1 <= n; ++t)
                p.objective.add_quadratic(var(u, t), var(v, t + 1), dist(u, v));
        }
    }
    // quadratic penalty for the per-time one-hot constraints over times 2..n
    for (int t = 2; t <= n; ++t) {
        p.objective.add_constant(lambda);
        for (int u = 2; u <= n; ++u) {
            p.objective.add_linear(var(u, t), -lambda);
            for (int v = u + 1; v <= n; ++v)
                p.objective.add_quadratic(var(u, t), var(v, t), 2.0 * lambda);
        }
    }

    std::vector<Block> blocks;
    for (int v = 2; v <= n; ++v) {
        Block b;
        b.id = v - 2;
        for (int t = 2; t <= n; ++t) b.vars.push_back(var(v, t));
        blocks.push_back(std::move(b));
    }
    p.layout = BlockLayout(std::move(blocks));

    const int fixed_base = (n - 1) * kb;
    for (int t = 1; t <= n; ++t)
        p.fixed.push_back({fixed_base + (t - 1), static_cast<std::uint8_t>(t == 1 ? 1 : 0)});

    p.labels.resize(static_cast<std::size_t>(n - 1) * kb + n);
    for (int v = 2; v <= n; ++v)
        for (int t = 2; t <= n; ++t)
            p.labels[var(v, t)] = "x[" + std::to_string(v) + "][" + std::to_string(t) + "]";
    for (int t = 1; t <= n; ++t)
        p.labels[fixed_base + (t - 1)] = "x[1][" + std::to_string(t) + "]";
    return p;
}

}  // namespace wsxy
