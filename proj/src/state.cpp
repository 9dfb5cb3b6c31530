#include "wsxy/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wsxy {

bool Mat2::is_unitary(double tol) const {
    // rows orthonormal
    const double r0 = std::norm(a) + std::norm(b);
    const double r1 = std::norm(c) + std::norm(d);
    const cplx dot = a * std::conj(c) + b * std::conj(d);
    return std::abs(r0 - 1.0) <= tol && std::abs(r1 - 1.0) <= tol && std::abs(dot) <= tol;
}

SubspaceState::SubspaceState(std::shared_ptr<const BlockLayout> layout, std::vector<cplx> amps)
    : layout_(std::move(layout)), amps_(std::move(amps)) {
    if (!layout_) throw std::invalid_argument("state: null layout");
    if (amps_.size() != layout_->dimension())
        throw std::invalid_argument("state: amplitude vector does not match layout dimension");
}

double SubspaceState::norm() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

SubspaceState init_wp_state(std::shared_ptr<const BlockLayout> layout,
                            const ProbabilityTable& P) {
    P.validate(*layout);
    const int L = layout->num_blocks();
    std::vector<std::vector<double>> roots(L);
    for (int l = 0; l < L; ++l) {
        roots[l].resize(P.rows[l].size());
        for (std::size_t i = 0; i < P.rows[l].size(); ++i)
            roots[l][i] = std::sqrt(P.rows[l][i]);
    }
    const std::uint64_t dim = layout->dimension();
    std::vector<cplx> amps(dim);
    std::vector<int> multi(L, 0);
    for (std::uint64_t m = 0; m < dim; ++m) {
        double v = 1.0;
        for (int l = 0; l < L; ++l) v *= roots[l][multi[l]];
        amps[m] = v;
        for (int l = L - 1; l >= 0; --l) {  // odometer increment
            if (++multi[l] < layout->block_size(l)) break;
            multi[l] = 0;
        }
    }
    return SubspaceState(std::move(layout), std::move(amps));
}

void apply_cost_phase(SubspaceState& state, const CostDiagonal& diag, double gamma) {
    if (diag.dimension() != state.dimension())
        throw std::invalid_argument("apply_cost_phase: dimension mismatch");
    auto& amps = state.amplitudes();
    if (gamma == 0.0) return;
    for (std::uint64_t m = 0; m < amps.size(); ++m)
        amps[m] *= std::polar(1.0, -gamma * diag.values[m]);
}

void apply_pair_rotation(SubspaceState& state, int block, int i, int j, const Mat2& U) {
    const BlockLayout& layout = state.layout();
    if (block < 0 || block >= layout.num_blocks())
        throw std::out_of_range("apply_pair_rotation: block out of range");
    const int k = layout.block_size(block);
    if (i == j || i < 0 || j < 0 || i >= k || j >= k)
        throw std::out_of_range("apply_pair_rotation: invalid position pair");
    if (!U.is_unitary()) throw std::invalid_argument("apply_pair_rotation: non-unitary matrix");

    const std::uint64_t stride = layout.stride(block);
    const std::uint64_t span = stride * static_cast<std::uint64_t>(k);
    const std::uint64_t dim = state.dimension();
    cplx* amp = state.amplitudes().data();
    const std::uint64_t oi = stride * static_cast<std::uint64_t>(i);
    const std::uint64_t oj = stride * static_cast<std::uint64_t>(j);
    for (std::uint64_t base = 0; base < dim; base += span) {
        for (std::uint64_t lo = 0; lo < stride; ++lo) {
            cplx& x = amp[base + lo + oi];
            cplx& y = amp[base + lo + oj];
            const cplx nx = U.a * x + U.b * y;
            const cplx ny = U.c * x + U.d * y;
            x = nx;
            y = ny;
        }
    }
}

void scale_basis(SubspaceState& state, int block, int i, cplx factor) {
    const BlockLayout& layout = state.layout();
    if (block < 0 || block >= layout.num_blocks())
        throw std::out_of_range("scale_basis: block out of range");
    const int k = layout.block_size(block);
    if (i < 0 || i >= k) throw std::out_of_range("scale_basis: position out of range");
    const std::uint64_t stride = layout.stride(block);
    const std::uint64_t span = stride * static_cast<std::uint64_t>(k);
    const std::uint64_t dim = state.dimension();
    cplx* amp = state.amplitudes().data();
    const std::uint64_t oi = stride * static_cast<std::uint64_t>(i);
    for (std::uint64_t base = 0; base < dim; base += span)
        for (std::uint64_t lo = 0; lo < stride; ++lo)
            amp[base + lo + oi] *= factor;
}

void apply_basis_phase(SubspaceState& state, int block, int i, double phi) {
    scale_basis(state, block, i, std::polar(1.0, -phi));
}

void scale_state(SubspaceState& state, cplx factor) {
    for (cplx& a : state.amplitudes()) a *= factor;
}

double expectation(const SubspaceState& state, const CostDiagonal& diag) {
    if (diag.dimension() != state.dimension())
        throw std::invalid_argument("expectation: dimension mismatch");
    double e = 0.0;
    const auto& amps = state.amplitudes();
    for (std::uint64_t m = 0; m < amps.size(); ++m) e += std::norm(amps[m]) * diag.values[m];
    return e;
}

std::vector<std::uint64_t> sample(const SubspaceState& state, int m, Rng& rng) {
    if (m < 1) throw std::invalid_argument("sample: shot count must be >= 1");
    const auto& amps = state.amplitudes();
    std::vector<double> cdf(amps.size());
    double acc = 0.0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps[i]);
        cdf[i] = acc;
    }
    const double total = acc;
    std::vector<std::uint64_t> out(m);
    for (int s = 0; s < m; ++s) {
        const double u = rng.uniform() * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        out[s] = static_cast<std::uint64_t>(
            std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
    }
    return out;
}

}  // namespace wsxy
