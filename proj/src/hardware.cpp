#include "wsxy/hardware.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "wsxy/generators.hpp"
#include "wsxy/rng.hpp"

namespace wsxy {

HardwareMap HardwareMap::filtered(double max_coupler_error, double max_readout_error) const {
    HardwareMap out;
    std::set<int> kept;
    for (const auto& n : nodes) {
        if (n.readout_error <= max_readout_error) {
            out.nodes.push_back(n);
            kept.insert(n.id);
        }
    }
    for (const auto& e : edges)
        if (e.error <= max_coupler_error && kept.count(e.u) && kept.count(e.v))
            out.edges.push_back(e);
    return out;
}

std::vector<Triplet> enumerate_triplets(const HardwareMap& map) {
    std::map<int, std::vector<int>> adj;
    for (const auto& e : map.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<Triplet> out;
    for (auto& [b, nb] : adj) {
        std::sort(nb.begin(), nb.end());
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                out.push_back({nb[i], b, nb[j]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct SelectionModel {
    std::vector<Triplet> cand;
    std::vector<double> node_score;              // -internal error / 2W
    std::vector<std::vector<double>> pair_score; // (1 - w_tl/2W) for connected disjoint pairs
    std::vector<std::vector<char>> disjoint;
    double max_pair = 0.0;
};

SelectionModel build_model(const HardwareMap& map, const std::vector<Triplet>& cand) {
    std::map<std::pair<int, int>, double> err;
    double W = 0.0;
    for (const auto& e : map.edges) {
        err[{std::min(e.u, e.v), std::max(e.u, e.v)}] = e.error;
        W = std::max(W, e.error);
    }
    const double inv2w = W > 0.0 ? 1.0 / (2.0 * W) : 0.0;

    SelectionModel m;
    m.cand = cand;
    const int T = static_cast<int>(cand.size());
    m.node_score.assign(T, 0.0);
    for (int t = 0; t < T; ++t) {
        double internal = 0.0;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                auto it = err.find({std::min(cand[t][a], cand[t][b]),
                                    std::max(cand[t][a], cand[t][b])});
                if (it != err.end()) internal += it->second;
            }
        m.node_score[t] = -internal * inv2w;
    }
    m.pair_score.assign(T, std::vector<double>(T, 0.0));
    m.disjoint.assign(T, std::vector<char>(T, 0));
    for (int t = 0; t < T; ++t) {
        for (int l = t + 1; l < T; ++l) {
            std::set<int> vs(cand[t].begin(), cand[t].end());
            bool overlap = false;
            for (int v : cand[l])
                if (vs.count(v)) overlap = true;
            if (overlap) continue;
            m.disjoint[t][l] = m.disjoint[l][t] = 1;
            double best = -1.0;
            for (int a : cand[t])
                for (int b : cand[l]) {
                    auto it = err.find({std::min(a, b), std::max(a, b)});
                    if (it != err.end() && (best < 0.0 || it->second < best)) best = it->second;
                }
            if (best >= 0.0) {
                const double s = 1.0 - best * inv2w;
                m.pair_score[t][l] = m.pair_score[l][t] = s;
                m.max_pair = std::max(m.max_pair, s);
            }
        }
    }
    return m;
}

class BranchAndBound {
public:
    BranchAndBound(const SelectionModel& m, int n) : m_(m), n_(n) {
        best_ns_ = m.node_score;
        std::sort(best_ns_.rbegin(), best_ns_.rend());
    }

    TripletSelection run() {
        std::vector<int> sel;
        dfs(0, sel, 0.0);
        TripletSelection out;
        for (int t : best_sel_) out.triplets.push_back(m_.cand[t]);
        out.objective = best_val_;
        out.mode = "exact";
        return out;
    }

private:
    // optimistic completion: each remaining slot takes the best node score
    // plus a full complement of maximal pair bonuses
    double bound(double cur, int chosen, int /*next*/) const {
        double b = cur;
        for (int j = chosen; j < n_; ++j)
            b += (j < static_cast<int>(best_ns_.size()) ? best_ns_[j - chosen] : 0.0) +
                 j * m_.max_pair;
        return b;
    }

    void dfs(int start, std::vector<int>& sel, double cur) {
        const int chosen = static_cast<int>(sel.size());
        if (chosen == n_) {
            if (!found_ || cur > best_val_) {
                best_val_ = cur;
                best_sel_ = sel;
                found_ = true;
            }
            return;
        }
        const int T = static_cast<int>(m_.cand.size());
        if (T - start < n_ - chosen) return;
        if (found_ && bound(cur, chosen, start) <= best_val_) return;
        for (int t = start; t < T; ++t) {
            bool ok = true;
            for (int s : sel)
                if (!m_.disjoint[s][t]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            double add = m_.node_score[t];
            for (int s : sel) add += m_.pair_score[s][t];
            sel.push_back(t);
            dfs(t + 1, sel, cur + add);
            sel.pop_back();
        }
    }

    const SelectionModel& m_;
    int n_;
    std::vector<double> best_ns_;
    double best_val_ = 0.0;
    std::vector<int> best_sel_;
    bool found_ = false;
};

TripletSelection beam_search(const SelectionModel& m, int n, int width = 64) {
    struct Partial {
        std::vector<int> sel;
        double val = 0.0;
    };
    std::vector<Partial> beam{{{}, 0.0}};
    const int T = static_cast<int>(m.cand.size());
    for (int depth = 0; depth < n; ++depth) {
        std::vector<Partial> next;
        for (const auto& p : beam) {
            const int start = p.sel.empty() ? 0 : p.sel.back() + 1;
            for (int t = start; t < T; ++t) {
                bool ok = true;
                for (int s : p.sel)
                    if (!m.disjoint[s][t]) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                double add = m.node_score[t];
                for (int s : p.sel) add += m.pair_score[s][t];
                Partial q = p;
                q.sel.push_back(t);
                q.val += add;
                next.push_back(std::move(q));
            }
        }
        if (next.empty()) throw std::runtime_error("select_triplets: infeasible count");
        std::sort(next.begin(), next.end(), [](const Partial& a, const Partial& b) {
            if (a.val != b.val) return a.val > b.val;
            return a.sel < b.sel;
        });
        if (static_cast<int>(next.size()) > width) next.resize(width);
        beam = std::move(next);
    }
    TripletSelection out;
    for (int t : beam.front().sel) out.triplets.push_back(m.cand[t]);
    out.objective = beam.front().val;
    out.mode = "beam";
    return out;
}

}  // namespace

TripletSelection select_triplets(const HardwareMap& map, int n) {
    if (n < 1) throw std::invalid_argument("select_triplets: n must be >= 1");
    const auto cand = enumerate_triplets(map);
    if (static_cast<int>(cand.size()) < n)
        throw std::runtime_error("select_triplets: not enough candidate triplets");
    const SelectionModel model = build_model(map, cand);
    TripletSelection sel = cand.size() <= 60 ? BranchAndBound(model, n).run()
                                             : beam_search(model, n);
    if (static_cast<int>(sel.triplets.size()) != n)
        throw std::runtime_error("select_triplets: infeasible count");
    return sel;
}

OneHotProblem gen_hardware_instance(const HardwareMap& map, int n, int swap_layers,
                                    std::uint64_t seed) {
    if (swap_layers < 0) throw std::invalid_argument("gen_hardware_instance: negative swap layers");
    const TripletSelection sel = select_triplets(map, n);

    // physical node -> (triplet, internal position)
    std::map<int, std::pair<int, int>> where;
    for (int t = 0; t < n; ++t)
        for (int p = 0; p < 3; ++p) where[sel.triplets[t][p]] = {t, p};

    std::vector<HardwareMap::Coupler> inter;
    for (const auto& e : map.edges) {
        auto iu = where.find(e.u), iv = where.find(e.v);
        if (iu == where.end() || iv == where.end()) continue;
        if (iu->second.first == iv->second.first) continue;  // internal: reserved for swaps/mixer
        inter.push_back(e);
    }
    std::sort(inter.begin(), inter.end(), [](const auto& a, const auto& b) {
        return std::pair(std::min(a.u, a.v), std::max(a.u, a.v)) <
               std::pair(std::min(b.u, b.v), std::max(b.u, b.v));
    });

    OneHotProblem p;
    p.family = "hardware";
    p.provenance = "{\"n_triplets\":" + std::to_string(n) +
                   ",\"swap_layers\":" + std::to_string(swap_layers) +
                   ",\"seed\":" + std::to_string(seed) +
                   ",\"selection\":\"" + sel.mode + "\"}";

    Rng rng(seed);
    // pos_to_logical[t][p] = logical variable slot currently held at position p
    std::vector<std::array<int, 3>> pos_to_logical(n, {0, 1, 2});
    std::set<std::pair<int, int>> used;
    std::vector<int> phase_of;  // parallel to accepted interactions, for synthesis metadata
    std::string phases_json;
    const auto logical_var = [&](int t, int pos) { return 3 * t + pos_to_logical[t][pos]; };

    for (int phase = 0; phase <= swap_layers; ++phase) {
        if (phase > 0) {
            // layers alternate between internal swaps (1,2) and (2,3); three
            // layers compose to a full reversal of each triplet
            const int a = (phase - 1) % 2 == 0 ? 0 : 1;
            for (auto& perm : pos_to_logical) std::swap(perm[a], perm[a + 1]);
        }
        for (const auto& e : inter) {
            const auto [tu, pu] = where.at(e.u);
            const auto [tv, pv] = where.at(e.v);
            int lu = logical_var(tu, pu), lv = logical_var(tv, pv);
            if (lu > lv) std::swap(lu, lv);
            if (!used.insert({lu, lv}).second) continue;  // pair already realised
            const double w = weight_from_grid_index(static_cast<int>(rng.uniform_int(21)));
            p.objective.add_quadratic(lu, lv, w);
            phase_of.push_back(phase);
            if (!phases_json.empty()) phases_json += ",";
            phases_json += "[" + std::to_string(lu) + "," + std::to_string(lv) + "," +
                           std::to_string(phase) + "]";
        }
    }
    p.provenance.insert(p.provenance.size() - 1, ",\"interaction_phases\":[" + phases_json + "]");

    std::vector<Block> blocks;
    for (int t = 0; t < n; ++t) {
        Block b;
        b.id = t;
        b.vars = {3 * t, 3 * t + 1, 3 * t + 2};
        blocks.push_back(std::move(b));
    }
    p.layout = BlockLayout(std::move(blocks));

    p.labels.resize(static_cast<std::size_t>(3) * n);
    for (int t = 0; t < n; ++t)
        for (int s = 0; s < 3; ++s)
            p.labels[3 * t + s] = "t" + std::to_string(t) + "[" + std::to_string(s + 1) + "]" +
                                  "@q" + std::to_string(sel.triplets[t][s]);
    return p;
}

}  // namespace wsxy
