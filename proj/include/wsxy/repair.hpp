#pragma once

#include <cstdint>
#include <vector>

#include "wsxy/problem.hpp"
#include "wsxy/rng.hpp"

namespace wsxy {

// Number of blocks whose bits are not exactly one-hot.
int count_violations(const BlockLayout& layout, const std::vector<std::uint8_t>& bits);

struct RepairResult {
    std::vector<std::uint8_t> bits;
    std::vector<int> flips;            // variable flipped at each accepted step
    std::vector<double> cost_trace;    // penalised cost after each flip (strictly decreasing)
    bool lambda_adequate = true;       // false when lambda <= a possible single-flip objective gain
};

// Steepest-descent single-bit-flip repair on C(x) + lambda * sum_b (1 - sum x)^2.
// Ties break toward the lowest variable index; stops at a local minimum. With
// an adequate lambda the output satisfies every one-hot constraint and bits
// of blocks that were feasible on entry are never flipped.
RepairResult greedy_repair(const OneHotProblem& problem, const std::vector<std::uint8_t>& bits,
                           double lambda = 10.0);

// Independent per-bit flips with probability f_bit.
std::vector<std::uint8_t> corrupt_sample(const std::vector<std::uint8_t>& bits, double f_bit,
                                         Rng& rng);

}  // namespace wsxy
