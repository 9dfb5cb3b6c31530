#include "wsxy/iws.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wsxy/metrics.hpp"
#include "wsxy/rng.hpp"

namespace wsxy {

SamplerKind sampler_kind_from_string(const std::string& name) {
    if (name == "quantum") return SamplerKind::Quantum;
    if (name == "random") return SamplerKind::UniformRandom;
    throw std::invalid_argument("unknown sampler: " + name);
}

void IwsConfig::validate(const BlockLayout& layout) const {
    if (p < 1) throw std::invalid_argument("iws: p must be >= 1");
    if (shots_per_iter < 1) throw std::invalid_argument("iws: shots per iteration must be >= 1");
    if (total_shots < shots_per_iter)
        throw std::invalid_argument("iws: total shot budget below one iteration");
    if (beta_temp <= 0.0) throw std::invalid_argument("iws: inverse temperature must be > 0");
    for (int l = 0; l < layout.num_blocks(); ++l) {
        const double limit = 1.0 - 1.0 / layout.block_size(l);
        if (!(eps > 0.0 && eps <= limit))
            throw std::invalid_argument("iws: eps incompatible with block size");
    }
}

ProbabilityTable boltzmann_update(const BlockLayout& layout,
                                  const std::vector<std::uint64_t>& samples,
                                  const std::vector<double>& energies, double beta_temp) {
    if (samples.empty()) throw std::invalid_argument("boltzmann_update: empty sample set");
    if (samples.size() != energies.size())
        throw std::invalid_argument("boltzmann_update: samples/energies misaligned");
    const double e_min = *std::min_element(energies.begin(), energies.end());
    const double e_max = *std::max_element(energies.begin(), energies.end());
    const double spread = e_max - e_min;

    ProbabilityTable t;
    t.rows.reserve(layout.num_blocks());
    for (int l = 0; l < layout.num_blocks(); ++l)
        t.rows.emplace_back(layout.block_size(l), 0.0);
    for (std::size_t m = 0; m < samples.size(); ++m) {
        const double w =
            spread == 0.0 ? 1.0 : std::exp(-beta_temp * (energies[m] - e_min) / spread);
        for (int l = 0; l < layout.num_blocks(); ++l)
            t.rows[l][layout.position_of(l, samples[m])] += w;
    }
    for (auto& row : t.rows) {
        double z = 0.0;
        for (double v : row) z += v;
        for (double& v : row) v /= z;
    }
    return t;
}

namespace {

// Euclidean projection onto {x : sum x = 1, lo <= x_i <= hi}: bisect the
// shift tau in x_i = clip(p_i - tau).
std::vector<double> project_row(const std::vector<double>& p, double lo, double hi) {
    const int k = static_cast<int>(p.size());
    const auto mass = [&](double tau) {
        double s = 0.0;
        for (double v : p) s += std::clamp(v - tau, lo, hi);
        return s;
    };
    double a = *std::min_element(p.begin(), p.end()) - hi;
    double b = *std::max_element(p.begin(), p.end()) - lo;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mass(mid) > 1.0)
            a = mid;
        else
            b = mid;
    }
    const double tau = 0.5 * (a + b);
    std::vector<double> out(k);
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
        out[i] = std::clamp(p[i] - tau, lo, hi);
        s += out[i];
    }
    // absorb the bisection residual into an interior entry
    const double resid = 1.0 - s;
    for (int i = 0; i < k && resid != 0.0; ++i) {
        const double v = out[i] + resid;
        if (v > lo && v < hi) {
            out[i] = v;
            break;
        }
    }
    return out;
}

std::vector<double> rescale_row(const std::vector<double>& p, double lo, double hi) {
    std::vector<double> out = p;
    for (int pass = 0; pass < 100; ++pass) {
        double clipped_mass = 0.0, free_mass = 0.0;
        std::vector<char> at_bound(out.size(), 0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double c = std::clamp(out[i], lo, hi);
            if (c != out[i] || c == lo || c == hi) {
                at_bound[i] = 1;
                clipped_mass += c;
            } else {
                free_mass += c;
            }
            out[i] = c;
        }
        const double target = 1.0 - clipped_mass;
        if (free_mass <= 0.0 || std::abs(free_mass - target) < 1e-15) break;
        const double scale = target / free_mass;
        bool changed = false;
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (!at_bound[i]) {
                out[i] *= scale;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return out;
}

}  // namespace

ProbabilityTable clamp(const ProbabilityTable& P, double eps, ClampMode mode) {
    ProbabilityTable out;
    out.clamp_eps = eps;
    out.rows.reserve(P.rows.size());
    for (const auto& row : P.rows) {
        const int k = static_cast<int>(row.size());
        const double lo = eps / (k - 1);
        const double hi = 1.0 - eps;
        if (k * lo > 1.0 + 1e-12 || k * hi < 1.0 - 1e-12)
            throw std::invalid_argument("clamp: eps infeasible for block size");
        out.rows.push_back(mode == ClampMode::Project ? project_row(row, lo, hi)
                                                      : rescale_row(row, lo, hi));
    }
    return out;
}

namespace {

std::uint64_t draw_from_table(const BlockLayout& layout, const ProbabilityTable& P, Rng& rng) {
    std::uint64_t idx = 0;
    for (int l = 0; l < layout.num_blocks(); ++l) {
        const auto& row = P.rows[l];
        const double u = rng.uniform();
        double acc = 0.0;
        int pos = static_cast<int>(row.size()) - 1;
        for (int i = 0; i < static_cast<int>(row.size()); ++i) {
            acc += row[i];
            if (u < acc) {
                pos = i;
                break;
            }
        }
        idx += static_cast<std::uint64_t>(pos) * layout.stride(l);
    }
    return idx;
}

}  // namespace

IwsRun run_iws(const OneHotProblem& problem, const MixerTopology& topo,
               const IwsConfig& config, const CostDiagonal* diag,
               const std::optional<LinearSchedule>& schedule) {
    const BlockLayout& layout = problem.layout;
    config.validate(layout);
    const bool quantum = config.sampler == SamplerKind::Quantum;
    if (quantum && diag == nullptr)
        throw std::invalid_argument("run_iws: quantum sampler requires a cost diagonal");

    auto layout_ptr = std::make_shared<const BlockLayout>(layout);
    IwsRun run;
    ProbabilityTable P = uniform_table(layout);

    if (quantum) {
        if (schedule) {
            run.schedule = *schedule;
        } else {
            auto opt = optimize_parameters(problem, *diag, topo, P, config.p,
                                           config.multistart, config.seed, config.qaoa);
            run.schedule = opt.schedule;
            run.optimizer_invocations = 1;
        }
    }

    Rng rng(Rng::derive(config.seed, 0xA17));
    int m_agg = 0;
    bool have_best = false;
    while (m_agg < config.total_shots) {
        const int shots = std::min(config.shots_per_iter, config.total_shots - m_agg);
        IwsIteration it;
        it.P = P;
        it.shots = shots;

        std::vector<std::uint64_t> samples;
        std::vector<double> energies(shots);
        if (quantum) {
            QaoaOutcome outcome =
                run_ws_qaoa_state(problem, *diag, topo, P, *run.schedule, config.qaoa);
            ++run.quantum_invocations;
            samples = sample(outcome.state, shots, rng);
            for (int s = 0; s < shots; ++s) energies[s] = diag->values[samples[s]];
            it.popt = p_opt(outcome.state, *diag);
            run.final_state = std::move(outcome.state);
        } else {
            samples.resize(shots);
            for (int s = 0; s < shots; ++s) {
                samples[s] = draw_from_table(layout, P, rng);
                energies[s] = problem.evaluate_bits(layout.index_to_bitstring(samples[s]));
            }
            if (diag) it.popt = p_opt_classical(layout, P, *diag);
        }

        it.e_min = *std::min_element(energies.begin(), energies.end());
        it.e_max = *std::max_element(energies.begin(), energies.end());
        it.e_mean = 0.0;
        for (double e : energies) it.e_mean += e;
        it.e_mean /= shots;
        it.spread = it.e_max - it.e_min;
        if (!have_best || it.e_min < run.best_energy) run.best_energy = it.e_min;
        have_best = true;
        it.best_so_far = run.best_energy;
        m_agg += shots;
        it.m_agg = m_agg;
        run.sample_energies.insert(run.sample_energies.end(), energies.begin(), energies.end());

        P = clamp(boltzmann_update(layout, samples, energies, config.beta_temp), config.eps,
                  config.clamp_mode);
        run.iterations.push_back(std::move(it));
    }
    run.final_P = P;
    return run;
}

}  // namespace wsxy
