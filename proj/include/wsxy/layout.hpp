#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace wsxy {

// One one-hot constraint spanning k binary variables.
struct Block {
    int id = 0;
    std::vector<int> vars;  // global ids of the member variables, in position order

    int size() const { return static_cast<int>(vars.size()); }
};

// Ordered list of disjoint one-hot blocks.
//
// Conventions used throughout:
//   - positions within a block are 0-based in code (the surrounding math is
//     stated 1-based);
//   - a multi-index (i_0, ..., i_{L-1}) picks the occupied position of each
//     block and is linearised row-major in block declaration order;
//   - the free-variable bitstring is the concatenation of the blocks, so the
//     qubit/bit index of position p of block l is qubit_offset(l) + p.
class BlockLayout {
public:
    BlockLayout() = default;
    explicit BlockLayout(std::vector<Block> blocks);

    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    const Block& block(int l) const { return blocks_[l]; }
    const std::vector<Block>& blocks() const { return blocks_; }
    int block_size(int l) const { return blocks_[l].size(); }
    int qubit_offset(int l) const { return offsets_[l]; }

    // Number of free variables (total qubit count).
    int num_variables() const { return n_free_; }
    // Subspace dimension: product of all block sizes.
    std::uint64_t dimension() const { return dim_; }
    std::uint64_t stride(int l) const { return strides_[l]; }

    std::uint64_t multi_to_linear(const std::vector<int>& multi) const;
    std::vector<int> linear_to_multi(std::uint64_t index) const;
    // Occupied position of block l in the given linear index.
    int position_of(int l, std::uint64_t index) const {
        return static_cast<int>((index / strides_[l]) % static_cast<std::uint64_t>(blocks_[l].size()));
    }

    // Free-variable bitstring for a feasible multi-index (one 1 per block).
    std::vector<std::uint8_t> index_to_bitstring(std::uint64_t index) const;
    // Inverse; empty when the bitstring is not one-hot per block.
    std::optional<std::uint64_t> bitstring_to_index(const std::vector<std::uint8_t>& bits) const;

    // Block owning a free variable position (bit index), or -1.
    int block_of_bit(int bit) const;

    // Bitstring position of a free variable id; throws for unknown ids.
    // Generators number variables so that ids and positions coincide, but
    // documents loaded from JSON may use any ids.
    int bit_of_var(int var) const;

private:
    std::vector<Block> blocks_;
    std::vector<std::uint64_t> strides_;
    std::vector<int> offsets_;
    std::unordered_map<int, int> var_to_bit_;
    std::uint64_t dim_ = 1;
    int n_free_ = 0;
};

}  // namespace wsxy
