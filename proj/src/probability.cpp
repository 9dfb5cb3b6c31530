#include "wsxy/probability.hpp"

#include <cmath>
#include <stdexcept>

namespace wsxy {

void ProbabilityTable::validate(const BlockLayout& layout, double tol) const {
    if (num_blocks() != layout.num_blocks())
        throw std::invalid_argument("probability table: block count mismatch");
    for (int l = 0; l < num_blocks(); ++l) {
        if (static_cast<int>(rows[l].size()) != layout.block_size(l))
            throw std::invalid_argument("probability table: block size mismatch");
        double sum = 0.0;
        for (double p : rows[l]) {
            if (!(p > 0.0) || !(p < 1.0 + tol))
                throw std::invalid_argument("probability table: entries must lie in (0, 1)");
            sum += p;
        }
        if (std::abs(sum - 1.0) > tol)
            throw std::invalid_argument("probability table: block does not sum to 1");
    }
}

ProbabilityTable uniform_table(const BlockLayout& layout) {
    ProbabilityTable t;
    t.rows.reserve(layout.num_blocks());
    for (int l = 0; l < layout.num_blocks(); ++l) {
        const int k = layout.block_size(l);
        t.rows.emplace_back(k, 1.0 / k);
    }
    return t;
}

ProbabilityTable assignment_table(const BlockLayout& layout, std::uint64_t index) {
    ProbabilityTable t;
    t.rows.reserve(layout.num_blocks());
    for (int l = 0; l < layout.num_blocks(); ++l) {
        std::vector<double> row(layout.block_size(l), 0.0);
        row[layout.position_of(l, index)] = 1.0;
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace wsxy
