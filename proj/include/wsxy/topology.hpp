#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wsxy/layout.hpp"

namespace wsxy {

using Edge = std::pair<int, int>;           // vertex pair, stored with first < second
using Matching = std::vector<Edge>;         // one colour class: pairwise disjoint edges

// Mixer graph of a single block, together with its edge colouring.
struct BlockGraph {
    int k = 0;
    std::vector<Edge> edges;
    std::vector<int> degree;
    int max_degree = 0;
    std::vector<Matching> coloring;  // matchings covering the edge set, applied in order

    int num_colors() const { return static_cast<int>(coloring.size()); }
};

// Partitions the edges into at most max_degree + 1 matchings.
// Cycles in natural vertex order get the even/odd(/closing) parity colouring,
// paths the even/odd parity colouring, complete graphs the round-robin
// (circle method) colouring; everything else falls back to Misra-Gries.
std::vector<Matching> edge_coloring(int k, const std::vector<Edge>& edges);

// Builds a block graph (degrees + colouring) from an edge list.
BlockGraph make_block_graph(int k, std::vector<Edge> edges);

BlockGraph complete_graph(int k);
BlockGraph ring_graph(int k);   // k == 2 degenerates to the single edge
BlockGraph line_graph(int k);

enum class TopologyKind { Complete, Ring, Line };

TopologyKind topology_kind_from_string(const std::string& name);

// One mixer graph per block, matching a layout's block sizes.
struct MixerTopology {
    std::vector<BlockGraph> blocks;

    void validate(const BlockLayout& layout) const;
};

MixerTopology make_topology(const BlockLayout& layout, TopologyKind kind);

}  // namespace wsxy
