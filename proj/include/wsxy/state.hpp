#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "wsxy/layout.hpp"
#include "wsxy/probability.hpp"
#include "wsxy/rng.hpp"

namespace wsxy {

using cplx = std::complex<double>;

// 2x2 complex matrix acting on an ordered amplitude pair.
struct Mat2 {
    cplx a, b;  // row 0
    cplx c, d;  // row 1

    bool is_unitary(double tol = 1e-12) const;
};

// Energies of all feasible states, indexed by linear multi-index.
struct CostDiagonal {
    std::vector<double> values;
    double e_opt = 0.0;
    std::vector<std::uint64_t> optima;  // argmin indices (within 1e-9 of e_opt)

    std::uint64_t dimension() const { return values.size(); }
};

// Quantum state restricted to the product of one-excitation sectors, one
// sector per block. Amplitudes are stored as a dense complex vector of
// length layout.dimension(), linearised row-major over the blocks.
//
// A value type: copy/move freely between threads, but do not mutate one
// instance concurrently.
class SubspaceState {
public:
    SubspaceState(std::shared_ptr<const BlockLayout> layout, std::vector<cplx> amps);

    const BlockLayout& layout() const { return *layout_; }
    std::shared_ptr<const BlockLayout> layout_ptr() const { return layout_; }
    std::uint64_t dimension() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& amplitudes() { return amps_; }
    cplx amplitude(std::uint64_t i) const { return amps_[i]; }

    double norm() const;

private:
    std::shared_ptr<const BlockLayout> layout_;
    std::vector<cplx> amps_;
};

// |psi_0(P)> = tensor product over blocks of sum_i sqrt(P_l,i) |e_i>.
SubspaceState init_wp_state(std::shared_ptr<const BlockLayout> layout,
                            const ProbabilityTable& P);

// amp[m] *= exp(-i * gamma * diag[m])
void apply_cost_phase(SubspaceState& state, const CostDiagonal& diag, double gamma);

// Applies U to the amplitude pair (position i, position j) of block l for
// every configuration of the remaining blocks. U must be unitary.
void apply_pair_rotation(SubspaceState& state, int block, int i, int j, const Mat2& U);

// Multiplies every amplitude whose block-l position equals i by exp(-i*phi).
void apply_basis_phase(SubspaceState& state, int block, int i, double phi);

// Multiplies every amplitude whose block-l position equals i by the factor.
void scale_basis(SubspaceState& state, int block, int i, cplx factor);

// Multiplies the whole state by a scalar (global phase bookkeeping).
void scale_state(SubspaceState& state, cplx factor);

// <state| diag |state>
double expectation(const SubspaceState& state, const CostDiagonal& diag);

// M i.i.d. draws of linear multi-indices from |amplitude|^2.
std::vector<std::uint64_t> sample(const SubspaceState& state, int m, Rng& rng);

}  // namespace wsxy
