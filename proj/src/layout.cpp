#include "wsxy/layout.hpp"

#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace wsxy {

BlockLayout::BlockLayout(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw std::invalid_argument("layout: no blocks");
    std::unordered_set<int> seen;
    for (const auto& b : blocks_) {
        if (b.size() < 2) throw std::invalid_argument("layout: block size must be >= 2");
        for (int v : b.vars) {
            if (!seen.insert(v).second)
                throw std::invalid_argument("layout: variable shared between blocks");
        }
    }
    strides_.assign(blocks_.size(), 1);
    offsets_.assign(blocks_.size(), 0);
    for (int l = static_cast<int>(blocks_.size()) - 2; l >= 0; --l)
        strides_[l] = strides_[l + 1] * static_cast<std::uint64_t>(blocks_[l + 1].size());
    dim_ = 1;
    n_free_ = 0;
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
        offsets_[l] = n_free_;
        for (int p = 0; p < blocks_[l].size(); ++p)
            var_to_bit_[blocks_[l].vars[p]] = n_free_ + p;
        n_free_ += blocks_[l].size();
        const auto k = static_cast<std::uint64_t>(blocks_[l].size());
        if (dim_ > std::numeric_limits<std::uint64_t>::max() / k)
            throw std::invalid_argument("layout: subspace dimension overflows");
        dim_ *= k;
    }
}

int BlockLayout::bit_of_var(int var) const {
    const auto it = var_to_bit_.find(var);
    if (it == var_to_bit_.end())
        throw std::invalid_argument("layout: unknown free variable id");
    return it->second;
}

std::uint64_t BlockLayout::multi_to_linear(const std::vector<int>& multi) const {
    if (multi.size() != blocks_.size())
        throw std::invalid_argument("multi_to_linear: rank mismatch");
    std::uint64_t idx = 0;
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
        if (multi[l] < 0 || multi[l] >= blocks_[l].size())
            throw std::out_of_range("multi_to_linear: position out of range");
        idx += static_cast<std::uint64_t>(multi[l]) * strides_[l];
    }
    return idx;
}

std::vector<int> BlockLayout::linear_to_multi(std::uint64_t index) const {
    if (index >= dim_) throw std::out_of_range("linear_to_multi: index out of range");
    std::vector<int> multi(blocks_.size());
    for (std::size_t l = 0; l < blocks_.size(); ++l)
        multi[l] = static_cast<int>((index / strides_[l]) %
                                    static_cast<std::uint64_t>(blocks_[l].size()));
    return multi;
}

std::vector<std::uint8_t> BlockLayout::index_to_bitstring(std::uint64_t index) const {
    if (index >= dim_) throw std::out_of_range("index_to_bitstring: index out of range");
    std::vector<std::uint8_t> bits(n_free_, 0);
    for (std::size_t l = 0; l < blocks_.size(); ++l)
        bits[offsets_[l] + position_of(static_cast<int>(l), index)] = 1;
    return bits;
}

std::optional<std::uint64_t> BlockLayout::bitstring_to_index(
    const std::vector<std::uint8_t>& bits) const {
    if (static_cast<int>(bits.size()) != n_free_) return std::nullopt;
    std::uint64_t idx = 0;
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
        int pos = -1;
        for (int p = 0; p < blocks_[l].size(); ++p) {
            if (bits[offsets_[l] + p]) {
                if (pos >= 0) return std::nullopt;  // more than one excitation
                pos = p;
            }
        }
        if (pos < 0) return std::nullopt;
        idx += static_cast<std::uint64_t>(pos) * strides_[l];
    }
    return idx;
}

int BlockLayout::block_of_bit(int bit) const {
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
        if (bit >= offsets_[l] && bit < offsets_[l] + blocks_[l].size())
            return static_cast<int>(l);
    }
    return -1;
}

}  // namespace wsxy
