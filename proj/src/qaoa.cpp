#include "wsxy/qaoa.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#include "wsxy/metrics.hpp"
#include "wsxy/parallel.hpp"
#include "wsxy/rng.hpp"

namespace wsxy {

namespace {

std::shared_ptr<const BlockLayout> shared_layout(const OneHotProblem& problem) {
    return std::make_shared<const BlockLayout>(problem.layout);
}

}  // namespace

QaoaOutcome run_ws_qaoa_state(const OneHotProblem& problem, const CostDiagonal& diag,
                              const MixerTopology& topo, const ProbabilityTable& P,
                              const LinearSchedule& schedule, const QaoaOpts& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    auto layout = shared_layout(problem);
    topo.validate(*layout);
    SubspaceState state = init_wp_state(layout, P);
    const ProbabilityTable mixer_P = opts.mixer_biased ? P : uniform_table(*layout);
    for (const auto& [beta, gamma] : schedule.expand()) {
        apply_cost_phase(state, diag, gamma);
        apply_ws_mixer(state, topo, mixer_P, beta, opts.trotter_steps, opts.scaled_blocks);
    }
    QaoaOutcome out{std::move(state), 0.0, schedule, 0.0};
    out.energy = expectation(out.state, diag);
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

namespace {

constexpr double kBetaMax = std::numbers::pi;
constexpr double kGammaMax = 2.0;

LinearSchedule schedule_from(const std::vector<double>& x, int p) {
    LinearSchedule s;
    s.p = p;
    if (p == 1) {
        s.beta0 = x[0];
        s.gamma0 = x[1];
    } else {
        s.beta0 = x[0];
        s.dbeta = x[1];
        s.gamma0 = x[2];
        s.dgamma = x[3];
    }
    return s;
}

struct BfgsOutcome {
    std::vector<double> x;
    double f = 0.0;
    bool converged = false;
    int evals = 0;
};

// Plain BFGS with backtracking line search and central-difference gradients.
template <typename F>
BfgsOutcome bfgs_minimize(F&& f, std::vector<double> x, int max_iters = 120,
                          double grad_tol = 1e-7, double fd_step = 1e-6) {
    const int d = static_cast<int>(x.size());
    BfgsOutcome out;
    int evals = 0;
    const auto eval = [&](const std::vector<double>& p) {
        ++evals;
        return f(p);
    };
    const auto grad = [&](const std::vector<double>& p) {
        std::vector<double> g(d);
        std::vector<double> q = p;
        for (int i = 0; i < d; ++i) {
            q[i] = p[i] + fd_step;
            const double fp = eval(q);
            q[i] = p[i] - fd_step;
            const double fm = eval(q);
            q[i] = p[i];
            g[i] = (fp - fm) / (2.0 * fd_step);
        }
        return g;
    };

    double fx = eval(x);
    std::vector<double> g = grad(x);
    std::vector<std::vector<double>> H(d, std::vector<double>(d, 0.0));
    for (int i = 0; i < d; ++i) H[i][i] = 1.0;

    bool converged = false;
    for (int it = 0; it < max_iters; ++it) {
        double gnorm = 0.0;
        for (double v : g) gnorm = std::max(gnorm, std::abs(v));
        if (gnorm < grad_tol) {
            converged = true;
            break;
        }
        std::vector<double> dir(d, 0.0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) dir[i] -= H[i][j] * g[j];
        double slope = 0.0;
        for (int i = 0; i < d; ++i) slope += dir[i] * g[i];
        if (slope >= 0.0) {  // reset to steepest descent
            for (int i = 0; i < d; ++i) {
                std::fill(H[i].begin(), H[i].end(), 0.0);
                H[i][i] = 1.0;
                dir[i] = -g[i];
            }
            slope = -std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
        }
        double t = 1.0;
        std::vector<double> xn(d);
        double fn = fx;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (int i = 0; i < d; ++i) xn[i] = x[i] + t * dir[i];
            fn = eval(xn);
            if (fn <= fx + 1e-4 * t * slope) {
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) break;
        std::vector<double> gn = grad(xn);
        std::vector<double> s(d), y(d);
        double ys = 0.0;
        for (int i = 0; i < d; ++i) {
            s[i] = xn[i] - x[i];
            y[i] = gn[i] - g[i];
            ys += y[i] * s[i];
        }
        x = xn;
        fx = fn;
        g = gn;
        if (ys > 1e-12) {  // BFGS inverse-Hessian update
            const double rho = 1.0 / ys;
            std::vector<double> Hy(d, 0.0);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) Hy[i] += H[i][j] * y[j];
            double yHy = 0.0;
            for (int i = 0; i < d; ++i) yHy += y[i] * Hy[i];
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    H[i][j] += (1.0 + rho * yHy) * rho * s[i] * s[j] -
                               rho * (Hy[i] * s[j] + s[i] * Hy[j]);
        }
    }
    out.x = std::move(x);
    out.f = fx;
    out.converged = converged;
    out.evals = evals;
    return out;
}

}  // namespace

OptimizeResult optimize_parameters(const OneHotProblem& problem, const CostDiagonal& diag,
                                   const MixerTopology& topo, const ProbabilityTable& P0,
                                   int p, int multistart, std::uint64_t seed,
                                   const QaoaOpts& opts) {
    if (p < 1) throw std::invalid_argument("optimize_parameters: p must be >= 1");
    if (multistart < 1) throw std::invalid_argument("optimize_parameters: multistart must be >= 1");
    const int d = p == 1 ? 2 : 4;

    const auto objective = [&](const std::vector<double>& x) {
        return run_ws_qaoa_state(problem, diag, topo, P0, schedule_from(x, p), opts).energy;
    };

    // start 0: best point of a coarse (beta0, gamma0) probe, zero ramps
    std::vector<double> probe_best(d, 0.0);
    double probe_val = 0.0;
    {
        bool first = true;
        for (int ib = 1; ib < 9; ++ib) {
            for (int ig = 1; ig < 9; ++ig) {
                std::vector<double> x(d, 0.0);
                x[0] = kBetaMax * ib / 9.0;
                x[d == 2 ? 1 : 2] = kGammaMax * ig / 9.0;
                const double v = objective(x);
                if (first || v < probe_val) {
                    probe_val = v;
                    probe_best = x;
                    first = false;
                }
            }
        }
    }

    std::vector<std::vector<double>> starts(multistart);
    starts[0] = probe_best;
    for (int s = 1; s < multistart; ++s) {
        Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(s)));
        std::vector<double> x(d);
        if (d == 2) {
            x[0] = rng.uniform() * kBetaMax;
            x[1] = rng.uniform() * kGammaMax;
        } else {
            x[0] = rng.uniform() * kBetaMax;
            x[1] = rng.uniform() * kBetaMax;
            x[2] = rng.uniform() * kGammaMax;
            x[3] = rng.uniform() * kGammaMax;
        }
        starts[s] = std::move(x);
    }

    std::vector<BfgsOutcome> results(multistart);
    parallel_for(multistart, [&](std::size_t s) {
        results[s] = bfgs_minimize(objective, starts[s]);
    });

    int best = 0;
    for (int s = 1; s < multistart; ++s)
        if (results[s].f < results[best].f) best = s;

    OptimizeResult out;
    out.schedule = schedule_from(results[best].x, p);
    out.energy = results[best].f;
    out.converged = results[best].converged;
    for (const auto& r : results) out.evaluations += r.evals;
    out.evaluations += 64;  // coarse probe
    return out;
}

double Landscape::max_r() const {
    double m = r.empty() ? 0.0 : r[0];
    for (double v : r) m = std::max(m, v);
    return m;
}

std::pair<int, int> Landscape::argmax() const {
    const int ng = static_cast<int>(dgamma_axis.size());
    int best = 0;
    for (int i = 1; i < static_cast<int>(r.size()); ++i)
        if (r[i] > r[best]) best = i;
    return {best / ng, best % ng};
}

Landscape landscape_grid(const OneHotProblem& problem, const CostDiagonal& diag,
                         const MixerTopology& topo, const ProbabilityTable& P, int p,
                         int res_beta, int res_gamma, const QaoaOpts& opts,
                         double dbeta_max, double dgamma_max) {
    if (res_beta < 2 || res_gamma < 2)
        throw std::invalid_argument("landscape_grid: resolution must be >= 2");
    Landscape ls;
    ls.dbeta_axis.resize(res_beta);
    ls.dgamma_axis.resize(res_gamma);
    for (int i = 0; i < res_beta; ++i) ls.dbeta_axis[i] = dbeta_max * i / (res_beta - 1);
    for (int i = 0; i < res_gamma; ++i) ls.dgamma_axis[i] = dgamma_max * i / (res_gamma - 1);
    ls.r.assign(static_cast<std::size_t>(res_beta) * res_gamma, 0.0);

    parallel_for(ls.r.size(), [&](std::size_t cell) {
        const int ib = static_cast<int>(cell) / res_gamma;
        const int ig = static_cast<int>(cell) % res_gamma;
        LinearSchedule s;
        s.p = p;
        s.dbeta = ls.dbeta_axis[ib];
        s.dgamma = ls.dgamma_axis[ig];
        s.beta0 = s.dbeta * (p - 0.5) / p;
        s.gamma0 = s.dgamma / (2.0 * p);
        const double e = run_ws_qaoa_state(problem, diag, topo, P, s, opts).energy;
        ls.r[cell] = approximation_ratio(e, diag.e_opt);
    });
    return ls;
}

}  // namespace wsxy
