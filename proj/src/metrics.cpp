#include "wsxy/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wsxy/probability.hpp"

namespace wsxy {

double approximation_ratio(double e, double e_opt) {
    if (e_opt == 0.0) throw std::invalid_argument("approximation_ratio: E_opt = 0 is undefined");
    return 1.0 - std::abs(e - e_opt) / std::abs(e_opt);
}

double p_opt(const SubspaceState& state, const CostDiagonal& diag) {
    if (diag.dimension() != state.dimension())
        throw std::invalid_argument("p_opt: dimension mismatch");
    double p = 0.0;
    for (std::uint64_t m : diag.optima) p += std::norm(state.amplitude(m));
    return p;
}

double p_opt_classical(const BlockLayout& layout, const ProbabilityTable& P,
                       const CostDiagonal& diag) {
    double p = 0.0;
    for (std::uint64_t m : diag.optima) {
        double term = 1.0;
        for (int l = 0; l < layout.num_blocks(); ++l)
            term *= P.rows[l][layout.position_of(l, m)];
        p += term;
    }
    return p;
}

BestTrace expected_best_trace(const SubspaceState& state, const CostDiagonal& diag, int s) {
    if (s < 1) throw std::invalid_argument("expected_best_trace: s must be >= 1");
    const std::uint64_t dim = diag.dimension();
    if (dim != state.dimension())
        throw std::invalid_argument("expected_best_trace: dimension mismatch");

    // sorted (value, prob) with prefix sums; each step is then two lookups
    std::vector<std::pair<double, double>> vp(dim);
    for (std::uint64_t m = 0; m < dim; ++m)
        vp[m] = {diag.values[m], std::norm(state.amplitude(m))};
    std::sort(vp.begin(), vp.end());
    std::vector<double> vals(dim), cum_p(dim + 1, 0.0), cum_pv(dim + 1, 0.0);
    for (std::uint64_t i = 0; i < dim; ++i) {
        vals[i] = vp[i].first;
        cum_p[i + 1] = cum_p[i] + vp[i].second;
        cum_pv[i + 1] = cum_pv[i] + vp[i].second * vp[i].first;
    }

    BestTrace out;
    out.energy.reserve(s);
    out.ratio.reserve(s);
    double e_prev = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) e_prev += vp[i].second * vp[i].first;  // E_0
    for (int step = 0; step < s; ++step) {
        const auto it = std::lower_bound(vals.begin(), vals.end(), e_prev);
        const std::uint64_t nlt = it - vals.begin();  // entries with value < E_{s-1}
        const double e = cum_pv[nlt] + e_prev * (cum_p[dim] - cum_p[nlt]);
        out.energy.push_back(e);
        out.ratio.push_back(approximation_ratio(e, diag.e_opt));
        e_prev = e;
    }
    return out;
}

std::vector<double> empirical_best_trace(const std::vector<double>& energies) {
    std::vector<double> out;
    out.reserve(energies.size());
    double best = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        best = i == 0 ? energies[i] : std::min(best, energies[i]);
        out.push_back(best);
    }
    return out;
}

void write_best_energy_csv(std::ostream& os, const std::vector<double>& best) {
    os << "shot,best_energy\n";
    os.precision(17);
    for (std::size_t i = 0; i < best.size(); ++i) os << (i + 1) << "," << best[i] << "\n";
}

void write_ratio_trace_csv(std::ostream& os, const BestTrace& trace) {
    os << "s,r_s\n";
    os.precision(17);
    for (std::size_t i = 0; i < trace.ratio.size(); ++i)
        os << (i + 1) << "," << trace.ratio[i] << "\n";
}

}  // namespace wsxy
