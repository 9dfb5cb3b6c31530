#pragma once

#include <cstdint>

#include "wsxy/problem.hpp"

namespace wsxy {

// Weight grid {-1.0, -0.9, ..., 1.0}: sampled by integer draw so every weight
// is one of these 21 exact doubles.
double weight_from_grid_index(int i);

// Max-k-Cut on the complete graph K_n with grid-sampled weights, minimisation
// form. Node 1 is fixed to category 1 (its edges fold into linear terms),
// leaving n-1 blocks of size k.
OneHotProblem gen_max_k_cut(int n, int k, std::uint64_t seed);

// Travelling salesperson on n cities placed around a radius-2 circle with
// normal radial offsets (radius clamped to >= 0.1). City 1 is fixed to time 1;
// per-city time assignments form n-1 blocks of size n-1, and the per-time
// one-hot constraints are enforced through a quadratic penalty of strength
// lambda.
OneHotProblem gen_tsp(int n, std::uint64_t seed, double lambda = 2.0);

}  // namespace wsxy
