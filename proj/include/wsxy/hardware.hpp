#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wsxy/problem.hpp"

namespace wsxy {

// Device coupling graph with per-coupler and per-node error rates.
struct HardwareMap {
    struct Node {
        int id = 0;
        double readout_error = 0.0;
    };
    struct Coupler {
        int u = 0, v = 0;
        double error = 0.0;
    };
    std::vector<Node> nodes;
    std::vector<Coupler> edges;

    // Drops nodes/couplers whose error rates exceed the thresholds
    // (defaults: 5% coupler error, 30% readout error).
    HardwareMap filtered(double max_coupler_error = 0.05,
                         double max_readout_error = 0.30) const;
};

// A qubit triplet is a 3-vertex path (a - b - c) in the coupling graph,
// stored with a < c. Path order defines the triplet's internal positions.
using Triplet = std::array<int, 3>;

std::vector<Triplet> enumerate_triplets(const HardwareMap& map);

struct TripletSelection {
    std::vector<Triplet> triplets;   // exactly n, pairwise vertex-disjoint
    double objective = 0.0;
    std::string mode;                // "exact" (branch and bound) or "beam"
};

// Picks n vertex-disjoint triplets maximising
//   sum over selected connected pairs of (1 - w_tl / 2W)
//   - sum over selected triplets of (internal coupler error) / 2W,
// where w_tl is the smallest error among couplers joining the pair and W the
// maximum coupler error of the map. Exact branch and bound up to 60
// candidates, beam search beyond.
TripletSelection select_triplets(const HardwareMap& map, int n);

// Constrained spin glass tailored to the coupling map: n triplets selected as
// above, swap layers alternating between internal positions (1,2) and (2,3),
// and one grid-sampled weight per logical pair exposed by some swap phase.
// Each distinct logical pair is used in at most one phase.
OneHotProblem gen_hardware_instance(const HardwareMap& map, int n, int swap_layers,
                                    std::uint64_t seed);

}  // namespace wsxy
