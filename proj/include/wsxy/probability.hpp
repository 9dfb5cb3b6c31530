#pragma once

#include <optional>
#include <vector>

#include "wsxy/layout.hpp"

namespace wsxy {

// Per-block warm-start distributions P_l. When a table was produced by
// clamping, the regularisation strength is recorded so the bounds
// [eps/(k_l-1), 1-eps] can be re-checked downstream.
struct ProbabilityTable {
    std::vector<std::vector<double>> rows;
    std::optional<double> clamp_eps;

    int num_blocks() const { return static_cast<int>(rows.size()); }

    // Throws unless every row matches the layout, sums to 1 within tol and
    // has strictly positive entries below 1.
    void validate(const BlockLayout& layout, double tol = 1e-12) const;
};

// P_l,i = 1/k_l for every block.
ProbabilityTable uniform_table(const BlockLayout& layout);

// Indicator table concentrated on the given multi-index (pre-clamp: the
// occupied position gets mass 1). Typically clamped before use.
ProbabilityTable assignment_table(const BlockLayout& layout, std::uint64_t index);

}  // namespace wsxy
