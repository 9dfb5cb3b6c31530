#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsxy/probability.hpp"
#include "wsxy/problem.hpp"
#include "wsxy/qaoa.hpp"
#include "wsxy/topology.hpp"

namespace wsxy {

enum class SamplerKind { Quantum, UniformRandom };
enum class ClampMode { Project, Rescale };

SamplerKind sampler_kind_from_string(const std::string& name);

struct IwsConfig {
    int p = 1;                       // circuit layers (quantum sampler)
    int shots_per_iter = 100;        // M
    int total_shots = 3000;          // M bar
    double eps = 0.2;                // clamp strength
    double beta_temp = 15.0;         // inverse temperature of the reweighting
    SamplerKind sampler = SamplerKind::Quantum;
    ClampMode clamp_mode = ClampMode::Project;
    std::uint64_t seed = 0;
    int multistart = 10;             // schedule optimisation restarts
    QaoaOpts qaoa;

    void validate(const BlockLayout& layout) const;
};

// Raw reweighted marginals (pre-clamp):
//   P_l,i  proportional to  sum_m exp(-beta (E_m - E_min) / spread) [sample m occupies i]
// with spread = max E - min E; all weights are 1 when the spread is zero.
// The E_min shift only rescales numerator and denominator together.
ProbabilityTable boltzmann_update(const BlockLayout& layout,
                                  const std::vector<std::uint64_t>& samples,
                                  const std::vector<double>& energies, double beta_temp);

// Restores each block to the simplex slab [eps/(k-1), 1-eps] with sum 1.
// Project: Euclidean projection (uniform shift of the unclipped entries).
// Rescale: clip then redistribute proportionally over unclipped entries;
// kept as an alternative for sensitivity checks.
ProbabilityTable clamp(const ProbabilityTable& P, double eps,
                       ClampMode mode = ClampMode::Project);

struct IwsIteration {
    ProbabilityTable P;          // table the iteration sampled from
    int shots = 0;
    int m_agg = 0;               // total shots including this iteration
    double e_min = 0.0, e_max = 0.0, e_mean = 0.0;
    double spread = 0.0;
    double best_so_far = 0.0;
    double popt = -1.0;          // state (quantum) or product (random) mass on optima; -1 if unknown
};

struct IwsRun {
    std::vector<IwsIteration> iterations;
    ProbabilityTable final_P;                  // post-update table after the last iteration
    std::optional<LinearSchedule> schedule;
    std::optional<SubspaceState> final_state;  // quantum sampler only
    std::vector<double> sample_energies;       // all shots in draw order
    double best_energy = 0.0;
    int quantum_invocations = 0;               // simulator runs; 0 for the random sampler
    int optimizer_invocations = 0;             // schedule optimisations performed (0 or 1)
};

// The iterative warm-start loop: uniform P, one schedule optimisation (unless
// a schedule is supplied, e.g. shared across repetitions), then
// sample -> energies -> reweight -> clamp until the shot budget is spent.
// The last batch is truncated so the total never exceeds the budget. The
// random sampler draws each block position directly from P and touches no
// simulator state.
IwsRun run_iws(const OneHotProblem& problem, const MixerTopology& topo,
               const IwsConfig& config, const CostDiagonal* diag = nullptr,
               const std::optional<LinearSchedule>& schedule = std::nullopt);

}  // namespace wsxy
