#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "wsxy/mixer.hpp"
#include "wsxy/problem.hpp"
#include "wsxy/schedule.hpp"
#include "wsxy/state.hpp"
#include "wsxy/topology.hpp"

namespace wsxy {

struct QaoaOpts {
    bool scaled_blocks = true;  // rescaled pair blocks in the mixer
    int trotter_steps = 1;
    bool mixer_biased = true;   // false: biased initial state but uniform-bias mixer
};

struct QaoaOutcome {
    SubspaceState state;
    double energy = 0.0;
    LinearSchedule schedule;
    double wall_seconds = 0.0;
};

// Alternates cost phases and block mixers over the expanded schedule,
// starting from |psi_0(P)>. Deterministic.
QaoaOutcome run_ws_qaoa_state(const OneHotProblem& problem, const CostDiagonal& diag,
                              const MixerTopology& topo, const ProbabilityTable& P,
                              const LinearSchedule& schedule, const QaoaOpts& opts = {});

struct OptimizeResult {
    LinearSchedule schedule;
    double energy = 0.0;
    bool converged = false;
    int evaluations = 0;
};

// Quasi-Newton (BFGS, central finite differences, step 1e-6) minimisation of
// the expectation over the schedule parameters: (beta0, gamma0) at p = 1, all
// four otherwise. Start 0 probes a coarse grid; the remaining multistarts are
// drawn uniformly from beta0, dbeta in [0, pi] and gamma0, dgamma in [0, 2].
// Multistarts run in parallel; the best result (ties by start index) wins.
OptimizeResult optimize_parameters(const OneHotProblem& problem, const CostDiagonal& diag,
                                   const MixerTopology& topo, const ProbabilityTable& P0,
                                   int p, int multistart = 10, std::uint64_t seed = 0,
                                   const QaoaOpts& opts = {});

struct Landscape {
    std::vector<double> dbeta_axis;
    std::vector<double> dgamma_axis;
    std::vector<double> r;  // row-major [ib * len(dgamma_axis) + ig]

    double max_r() const;
    std::pair<int, int> argmax() const;
};

// Approximation-ratio surface over (dbeta, dgamma) with the coupled offsets
// beta0 = dbeta (p - 1/2) / p and gamma0 = dgamma / (2p). Cells evaluate in
// parallel.
Landscape landscape_grid(const OneHotProblem& problem, const CostDiagonal& diag,
                         const MixerTopology& topo, const ProbabilityTable& P, int p,
                         int res_beta, int res_gamma, const QaoaOpts& opts = {},
                         double dbeta_max = 3.141592653589793, double dgamma_max = 2.0);

}  // namespace wsxy
