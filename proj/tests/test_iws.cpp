#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wsxy/generators.hpp"
#include "wsxy/iws.hpp"
#include "wsxy/metrics.hpp"
#include "wsxy/rng.hpp"

using namespace wsxy;

namespace {

BlockLayout simple_layout(std::vector<int> sizes) {
    std::vector<Block> blocks;
    int var = 0;
    for (std::size_t l = 0; l < sizes.size(); ++l) {
        Block b;
        b.id = static_cast<int>(l);
        for (int i = 0; i < sizes[l]; ++i) b.vars.push_back(var++);
        blocks.push_back(std::move(b));
    }
    return BlockLayout(std::move(blocks));
}

}  // namespace

TEST_CASE("boltzmann_update: single sample concentrates per block") {
    const auto layout = simple_layout({3, 2});
    const auto t = boltzmann_update(layout, {layout.multi_to_linear({1, 0})}, {-3.0}, 15.0);
    CHECK(t.rows[0] == std::vector<double>{0.0, 1.0, 0.0});
    CHECK(t.rows[1] == std::vector<double>{1.0, 0.0});
}

TEST_CASE("boltzmann_update: equal energies fall back to uniform weights") {
    const auto layout = simple_layout({3});
    const auto t = boltzmann_update(layout, {0, 1}, {2.0, 2.0}, 15.0);
    CHECK(t.rows[0][0] == doctest::Approx(0.5));
    CHECK(t.rows[0][1] == doctest::Approx(0.5));
    CHECK(t.rows[0][2] == doctest::Approx(0.0));
}

TEST_CASE("boltzmann_update: two-sample reweighting") {
    const auto layout = simple_layout({3});
    // samples at positions 0 and 1 with energies -2 and -1, unit temperature
    const auto t = boltzmann_update(layout, {0, 1}, {-2.0, -1.0}, 1.0);
    const double e = std::exp(1.0);
    CHECK(t.rows[0][0] == doctest::Approx(e / (e + 1)).epsilon(1e-12));
    CHECK(t.rows[0][1] == doctest::Approx(1 / (e + 1)).epsilon(1e-12));
    CHECK(t.rows[0][0] == doctest::Approx(0.7311).epsilon(1e-4));
    CHECK(t.rows[0][2] == doctest::Approx(0.0));
}

TEST_CASE("boltzmann_update rejects empty input") {
    const auto layout = simple_layout({2});
    CHECK_THROWS_AS(boltzmann_update(layout, {}, {}, 1.0), std::invalid_argument);
}

TEST_CASE("clamp: interior tables are fixed points") {
    ProbabilityTable t;
    t.rows = {{0.4, 0.35, 0.25}};
    for (auto mode : {ClampMode::Project, ClampMode::Rescale}) {
        const auto c = clamp(t, 0.2, mode);
        for (int i = 0; i < 3; ++i) CHECK(c.rows[0][i] == doctest::Approx(t.rows[0][i]));
        CHECK(c.clamp_eps == 0.2);
        const auto cc = clamp(c, 0.2, mode);  // idempotent
        for (int i = 0; i < 3; ++i) CHECK(cc.rows[0][i] == doctest::Approx(c.rows[0][i]));
    }
}

TEST_CASE("clamp: saturating cases") {
    ProbabilityTable t;
    t.rows = {{0.95, 0.04, 0.01}};
    const auto c = clamp(t, 0.2);
    CHECK(c.rows[0][0] == doctest::Approx(0.8));
    CHECK(c.rows[0][1] == doctest::Approx(0.1));
    CHECK(c.rows[0][2] == doctest::Approx(0.1));

    ProbabilityTable point;
    point.rows = {{1.0, 0.0}};
    const auto cp = clamp(point, 0.2);
    CHECK(cp.rows[0][0] == doctest::Approx(0.8));
    CHECK(cp.rows[0][1] == doctest::Approx(0.2));
}

TEST_CASE("clamp: fuzzed tables respect bounds and sum exactly") {
    Rng rng(314);
    for (auto mode : {ClampMode::Project, ClampMode::Rescale}) {
        for (int trial = 0; trial < 200; ++trial) {
            const int k = 2 + static_cast<int>(rng.uniform_int(7));
            std::vector<double> row(k);
            double sum = 0.0;
            for (auto& v : row) {
                v = std::pow(rng.uniform(), 4.0);
                sum += v;
            }
            if (sum == 0.0) row[0] = sum = 1.0;
            for (auto& v : row) v /= sum;
            ProbabilityTable t;
            t.rows = {row};
            const double eps = 0.05 + 0.9 * (1.0 - 1.0 / k) * rng.uniform();
            const auto c = clamp(t, eps, mode);
            const double lo = eps / (k - 1), hi = 1.0 - eps;
            double s = 0.0;
            for (double v : c.rows[0]) {
                CHECK(v >= lo - 1e-15);
                CHECK(v <= hi + 1e-15);
                s += v;
            }
            CHECK(std::abs(s - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("clamp: infeasible strength is rejected") {
    ProbabilityTable t;
    t.rows = {{0.5, 0.5}};
    CHECK_THROWS_AS(clamp(t, 0.75), std::invalid_argument);  // eps > 1 - 1/k
}

TEST_CASE("run_iws: single iteration when the budget equals the batch") {
    const auto problem = gen_max_k_cut(5, 3, 1);
    const auto diag = build_cost_diagonal(problem);
    const auto topo = make_topology(problem.layout, TopologyKind::Complete);
    IwsConfig cfg;
    cfg.shots_per_iter = 300;
    cfg.total_shots = 300;
    cfg.seed = 5;
    cfg.multistart = 2;
    const auto run = run_iws(problem, topo, cfg, &diag);
    CHECK(run.iterations.size() == 1);
    CHECK(run.final_P.rows.size() == 4);  // updated table recorded even if unused
    CHECK(run.sample_energies.size() == 300);
    CHECK(run.optimizer_invocations == 1);
}

TEST_CASE("run_iws: shot budget is never exceeded and batches truncate") {
    const auto problem = gen_max_k_cut(4, 2, 2);
    const auto diag = build_cost_diagonal(problem);
    const auto topo = make_topology(problem.layout, TopologyKind::Complete);
    IwsConfig cfg;
    cfg.shots_per_iter = 200;
    cfg.total_shots = 500;
    cfg.seed = 1;
    cfg.multistart = 2;
    const auto run = run_iws(problem, topo, cfg, &diag);
    CHECK(run.iterations.size() == 3);  // 200 + 200 + 100
    CHECK(run.iterations.back().shots == 100);
    CHECK(run.iterations.back().m_agg == 500);
    CHECK(run.sample_energies.size() == 500);
}

TEST_CASE("run_iws: random sampler touches no quantum machinery") {
    const auto problem = gen_max_k_cut(6, 3, 3);
    const auto topo = make_topology(problem.layout, TopologyKind::Complete);
    IwsConfig cfg;
    cfg.sampler = SamplerKind::UniformRandom;
    cfg.shots_per_iter = 100;
    cfg.total_shots = 600;
    cfg.seed = 9;
    const auto run = run_iws(problem, topo, cfg, nullptr);  // no diagonal needed
    CHECK(run.quantum_invocations == 0);
    CHECK(run.optimizer_invocations == 0);
    CHECK_FALSE(run.final_state.has_value());
    CHECK_FALSE(run.schedule.has_value());
    CHECK(run.iterations.size() == 6);
}

TEST_CASE("run_iws: vanishing temperature recovers clamped empirical marginals") {
    const auto problem = gen_max_k_cut(5, 2, 4);
    const auto topo = make_topology(problem.layout, TopologyKind::Complete);
    IwsConfig cfg;
    cfg.sampler = SamplerKind::UniformRandom;
    cfg.beta_temp = 1e-9;
    cfg.shots_per_iter = 400;
    cfg.total_shots = 800;
    cfg.eps = 0.2;
    cfg.seed = 31;
    const auto run = run_iws(problem, topo, cfg, nullptr);

    // replay the first batch by hand
    Rng rng(Rng::derive(31, 0xA17));
    std::vector<std::uint64_t> samples;
    for (int s = 0; s < 400; ++s) {
        std::uint64_t idx = 0;
        for (int l = 0; l < problem.layout.num_blocks(); ++l) {
            const double u = rng.uniform();
            const int pos = u < 0.5 ? 0 : 1;
            idx += static_cast<std::uint64_t>(pos) * problem.layout.stride(l);
        }
        samples.push_back(idx);
    }
    std::vector<double> counts0(2, 0.0);
    for (auto s : samples) counts0[problem.layout.position_of(0, s)] += 1.0;
    const double empirical = counts0[0] / 400.0;
    const double clamped = std::clamp(empirical, 0.2, 0.8);
    CHECK(run.iterations[1].P.rows[0][0] == doctest::Approx(clamped).epsilon(1e-6));
}

TEST_CASE("run_iws: best-so-far trace never increases") {
    const auto problem = gen_max_k_cut(6, 3, 5);
    const auto diag = build_cost_diagonal(problem);
    const auto topo = make_topology(problem.layout, TopologyKind::Complete);
    IwsConfig cfg;
    cfg.shots_per_iter = 100;
    cfg.total_shots = 1000;
    cfg.seed = 17;
    cfg.multistart = 2;
    const auto run = run_iws(problem, topo, cfg, &diag);
    for (std::size_t t = 1; t < run.iterations.size(); ++t)
        CHECK(run.iterations[t].best_so_far <= run.iterations[t - 1].best_so_far);
    // clamp bounds hold on every recorded table
    for (const auto& it : run.iterations) {
        if (!it.P.clamp_eps) continue;  // iteration 0 is the uniform start
        for (std::size_t l = 0; l < it.P.rows.size(); ++l) {
            const int k = static_cast<int>(it.P.rows[l].size());
            double sum = 0.0;
            for (double v : it.P.rows[l]) {
                CHECK(v >= 0.2 / (k - 1) - 1e-12);
                CHECK(v <= 0.8 + 1e-12);
                sum += v;
            }
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("run_iws: supplied schedule skips the optimisation step") {
    const auto problem = gen_max_k_cut(5, 3, 6);
    const auto diag = build_cost_diagonal(problem);
    const auto topo = make_topology(problem.layout, TopologyKind::Complete);
    IwsConfig cfg;
    cfg.shots_per_iter = 100;
    cfg.total_shots = 200;
    cfg.seed = 2;
    LinearSchedule s{0.9, 0.0, 0.58, 0.0, 1};
    const auto run = run_iws(problem, topo, cfg, &diag, s);
    CHECK(run.optimizer_invocations == 0);
    REQUIRE(run.schedule.has_value());
    CHECK(run.schedule->beta0 == doctest::Approx(0.9));
    // determinism: same config, same trace
    const auto run2 = run_iws(problem, topo, cfg, &diag, s);
    CHECK(run.sample_energies == run2.sample_energies);
}

TEST_CASE("config validation") {
    const auto layout = simple_layout({3, 2});
    IwsConfig cfg;
    cfg.eps = 0.6;  // too large for k = 2 (limit 0.5)
    CHECK_THROWS_AS(cfg.validate(layout), std::invalid_argument);
    cfg.eps = 0.2;
    cfg.beta_temp = 0.0;
    CHECK_THROWS_AS(cfg.validate(layout), std::invalid_argument);
    cfg.beta_temp = 15.0;
    cfg.total_shots = 10;
    cfg.shots_per_iter = 100;
    CHECK_THROWS_AS(cfg.validate(layout), std::invalid_argument);
}
