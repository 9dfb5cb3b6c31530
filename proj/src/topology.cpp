#include "wsxy/topology.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace wsxy {

namespace {

Edge canon(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

bool is_natural_cycle(int k, const std::set<Edge>& es) {
    if (k < 3 || static_cast<int>(es.size()) != k) return false;
    for (int i = 0; i + 1 < k; ++i)
        if (!es.count({i, i + 1})) return false;
    return es.count({0, k - 1}) > 0;
}

bool is_natural_path(int k, const std::set<Edge>& es) {
    if (static_cast<int>(es.size()) != k - 1) return false;
    for (int i = 0; i + 1 < k; ++i)
        if (!es.count({i, i + 1})) return false;
    return true;
}

bool is_complete(int k, const std::set<Edge>& es) {
    return static_cast<int>(es.size()) == k * (k - 1) / 2;
}

std::vector<Matching> color_cycle(int k) {
    Matching even, odd, last;
    for (int i = 0; i + 1 < k; i += 2) even.push_back({i, i + 1});
    for (int i = 1; i + 1 < k; i += 2) odd.push_back({i, i + 1});
    std::vector<Matching> layers{even, odd};
    if (k % 2 == 0) {
        layers[1].push_back({0, k - 1});  // closing edge fits the odd matching
    } else {
        last.push_back({0, k - 1});
        layers.push_back(last);
    }
    return layers;
}

std::vector<Matching> color_path(int k) {
    Matching even, odd;
    for (int i = 0; i + 1 < k; i += 2) even.push_back({i, i + 1});
    for (int i = 1; i + 1 < k; i += 2) odd.push_back({i, i + 1});
    std::vector<Matching> layers{even};
    if (!odd.empty()) layers.push_back(odd);
    return layers;
}

// Round-robin tournament schedule: k-1 rounds for even k, k rounds for odd k.
std::vector<Matching> color_complete(int k) {
    std::vector<Matching> layers;
    if (k % 2 == 0) {
        const int n = k - 1;
        for (int r = 0; r < n; ++r) {
            Matching m;
            m.push_back(canon(k - 1, r));
            for (int j = 1; j <= (k - 2) / 2; ++j)
                m.push_back(canon(((r + j) % n + n) % n, ((r - j) % n + n) % n));
            std::sort(m.begin(), m.end());
            layers.push_back(std::move(m));
        }
    } else {
        for (int r = 0; r < k; ++r) {
            Matching m;
            for (int j = 1; j <= (k - 1) / 2; ++j)
                m.push_back(canon(((r + j) % k + k) % k, ((r - j) % k + k) % k));
            std::sort(m.begin(), m.end());
            layers.push_back(std::move(m));
        }
    }
    return layers;
}

// Misra-Gries edge colouring; uses at most max_degree + 1 colours.
class MisraGries {
public:
    MisraGries(int k, const std::vector<Edge>& edges) : k_(k), edges_(edges) {
        adj_.assign(k, {});
        color_.assign(edges.size(), -1);
        int max_deg = 0;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            adj_[edges[e].first].push_back(static_cast<int>(e));
            adj_[edges[e].second].push_back(static_cast<int>(e));
        }
        for (int v = 0; v < k; ++v) max_deg = std::max(max_deg, static_cast<int>(adj_[v].size()));
        ncolors_ = max_deg + 1;
    }

    std::vector<Matching> run() {
        for (std::size_t e = 0; e < edges_.size(); ++e) color_edge(static_cast<int>(e));
        std::vector<Matching> layers(ncolors_);
        for (std::size_t e = 0; e < edges_.size(); ++e) layers[color_[e]].push_back(edges_[e]);
        layers.erase(std::remove_if(layers.begin(), layers.end(),
                                    [](const Matching& m) { return m.empty(); }),
                     layers.end());
        return layers;
    }

private:
    int other(int e, int v) const {
        return edges_[e].first == v ? edges_[e].second : edges_[e].first;
    }

    int edge_between(int u, int v) const {
        for (int e : adj_[u])
            if (other(e, u) == v) return e;
        return -1;
    }

    bool is_free(int v, int c) const {
        for (int e : adj_[v])
            if (color_[e] == c) return false;
        return true;
    }

    int free_color(int v) const {
        for (int c = 0; c < ncolors_; ++c)
            if (is_free(v, c)) return c;
        throw std::logic_error("edge coloring: no free color");
    }

    void color_edge(int e0) {
        const int u = edges_[e0].first;
        // maximal fan of u starting at the uncolored edge's endpoint
        std::vector<int> fan{edges_[e0].second};
        std::set<int> in_fan{edges_[e0].second};
        bool grew = true;
        while (grew) {
            grew = false;
            for (int e : adj_[u]) {
                const int w = other(e, u);
                if (color_[e] < 0 || in_fan.count(w)) continue;
                if (is_free(fan.back(), color_[e])) {
                    fan.push_back(w);
                    in_fan.insert(w);
                    grew = true;
                    break;
                }
            }
        }
        const int c = free_color(u);
        const int d = free_color(fan.back());
        if (!is_free(u, d)) invert_path(u, c, d);
        // first fan prefix vertex with d free; the prefix must still be a fan
        int w_idx = -1;
        for (std::size_t i = 0; i < fan.size(); ++i) {
            if (i > 0) {
                const int e = edge_between(u, fan[i]);
                if (e < 0 || color_[e] < 0 || !is_free(fan[i - 1], color_[e])) break;
            }
            if (is_free(fan[i], d)) {
                w_idx = static_cast<int>(i);
                break;
            }
        }
        if (w_idx < 0) throw std::logic_error("edge coloring: fan rotation failed");
        for (int i = 0; i < w_idx; ++i) {
            const int e_next = edge_between(u, fan[i + 1]);
            const int e_cur = i == 0 ? e0 : edge_between(u, fan[i]);
            color_[e_cur] = color_[e_next];
            color_[e_next] = -1;
        }
        const int e_w = w_idx == 0 ? e0 : edge_between(u, fan[w_idx]);
        color_[e_w] = d;
    }

    // Walk the maximal path from u alternating colors d, c, ... and swap them.
    void invert_path(int u, int c, int d) {
        int cur = u;
        int want = d;
        int prev_edge = -1;
        while (true) {
            int next_edge = -1;
            for (int e : adj_[cur]) {
                if (e != prev_edge && color_[e] == want) {
                    next_edge = e;
                    break;
                }
            }
            if (next_edge < 0) break;
            color_[next_edge] = want == d ? c : d;
            cur = other(next_edge, cur);
            prev_edge = next_edge;
            want = want == d ? c : d;
        }
    }

    int k_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> color_;
    int ncolors_;
};

}  // namespace

std::vector<Matching> edge_coloring(int k, const std::vector<Edge>& edges) {
    if (edges.empty()) throw std::invalid_argument("edge_coloring: empty edge set");
    std::set<Edge> es;
    for (const auto& [u, v] : edges) {
        if (u == v || u < 0 || v < 0 || u >= k || v >= k)
            throw std::invalid_argument("edge_coloring: invalid edge");
        es.insert(canon(u, v));
    }
    if (es.size() != edges.size()) throw std::invalid_argument("edge_coloring: duplicate edge");

    if (is_natural_cycle(k, es)) return color_cycle(k);
    if (is_natural_path(k, es)) return color_path(k);
    if (is_complete(k, es)) return color_complete(k);

    // already a matching?
    std::vector<int> deg(k, 0);
    int max_deg = 0;
    for (const auto& [u, v] : es) {
        max_deg = std::max({max_deg, ++deg[u], ++deg[v]});
    }
    if (max_deg == 1) return {Matching(es.begin(), es.end())};

    std::vector<Edge> sorted(es.begin(), es.end());
    return MisraGries(k, sorted).run();
}

BlockGraph make_block_graph(int k, std::vector<Edge> edges) {
    BlockGraph g;
    g.k = k;
    for (auto& [u, v] : edges) {
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    g.edges = std::move(edges);
    g.degree.assign(k, 0);
    for (const auto& [u, v] : g.edges) {
        ++g.degree[u];
        ++g.degree[v];
    }
    g.max_degree = *std::max_element(g.degree.begin(), g.degree.end());
    g.coloring = edge_coloring(k, g.edges);
    return g;
}

BlockGraph complete_graph(int k) {
    if (k < 2) throw std::invalid_argument("complete_graph: k must be >= 2");
    std::vector<Edge> edges;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) edges.push_back({i, j});
    return make_block_graph(k, std::move(edges));
}

BlockGraph ring_graph(int k) {
    if (k < 2) throw std::invalid_argument("ring_graph: k must be >= 2");
    if (k == 2) return make_block_graph(2, {{0, 1}});
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < k; ++i) edges.push_back({i, i + 1});
    edges.push_back({0, k - 1});
    return make_block_graph(k, std::move(edges));
}

BlockGraph line_graph(int k) {
    if (k < 2) throw std::invalid_argument("line_graph: k must be >= 2");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < k; ++i) edges.push_back({i, i + 1});
    return make_block_graph(k, std::move(edges));
}

TopologyKind topology_kind_from_string(const std::string& name) {
    if (name == "complete") return TopologyKind::Complete;
    if (name == "ring") return TopologyKind::Ring;
    if (name == "line") return TopologyKind::Line;
    throw std::invalid_argument("unknown topology: " + name);
}

void MixerTopology::validate(const BlockLayout& layout) const {
    if (static_cast<int>(blocks.size()) != layout.num_blocks())
        throw std::invalid_argument("topology: block count mismatch");
    for (int l = 0; l < layout.num_blocks(); ++l) {
        if (blocks[l].k != layout.block_size(l))
            throw std::invalid_argument("topology: block size mismatch");
        if (blocks[l].edges.empty())
            throw std::invalid_argument("topology: block has no mixer edges");
    }
}

MixerTopology make_topology(const BlockLayout& layout, TopologyKind kind) {
    MixerTopology topo;
    topo.blocks.reserve(layout.num_blocks());
    for (int l = 0; l < layout.num_blocks(); ++l) {
        const int k = layout.block_size(l);
        switch (kind) {
            case TopologyKind::Complete: topo.blocks.push_back(complete_graph(k)); break;
            case TopologyKind::Ring: topo.blocks.push_back(ring_graph(k)); break;
            case TopologyKind::Line: topo.blocks.push_back(line_graph(k)); break;
        }
    }
    return topo;
}

}  // namespace wsxy
