#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "wsxy/mixer.hpp"
#include "wsxy/rng.hpp"

using namespace wsxy;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_dist(int k, Rng& rng) {
    std::vector<double> p(k);
    double sum = 0.0;
    for (auto& v : p) {
        v = 0.05 + rng.uniform();
        sum += v;
    }
    for (auto& v : p) v /= sum;
    return p;
}

BlockGraph random_connected_graph(int k, Rng& rng) {
    std::vector<Edge> edges;
    std::set<std::pair<int, int>> seen;
    for (int v = 1; v < k; ++v) {  // random spanning tree
        const int u = static_cast<int>(rng.uniform_int(v));
        edges.push_back({u, v});
        seen.insert({u, v});
    }
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v)
            if (!seen.count({u, v}) && rng.uniform() < 0.3) {
                edges.push_back({u, v});
                seen.insert({u, v});
            }
    return make_block_graph(k, std::move(edges));
}

Eigen::VectorXcd sqrt_vec(const std::vector<double>& p) {
    Eigen::VectorXcd v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v(i) = std::sqrt(p[i]);
    return v;
}

void check_proper_coloring(int k, const std::vector<Edge>& edges,
                           const std::vector<Matching>& layers, int max_degree) {
    std::set<std::pair<int, int>> covered;
    for (const auto& layer : layers) {
        std::set<int> touched;
        for (const auto& [u, v] : layer) {
            CHECK(touched.insert(u).second);
            CHECK(touched.insert(v).second);
            covered.insert({std::min(u, v), std::max(u, v)});
        }
    }
    std::set<std::pair<int, int>> expected;
    for (const auto& [u, v] : edges) expected.insert({std::min(u, v), std::max(u, v)});
    CHECK(covered == expected);
    CHECK(static_cast<int>(layers.size()) <= max_degree + 1);
    CHECK(static_cast<int>(layers.size()) >= max_degree);
    (void)k;
}

}  // namespace

TEST_CASE("derive_pair_bias") {
    CHECK(derive_pair_bias({0.5, 0.5}, 0, 1) == doctest::Approx(0.5));
    CHECK(derive_pair_bias({0.8, 0.2}, 0, 1) == doctest::Approx(0.8));
    // positions are 0-based: the pair (2nd, 3rd) of (0.6, 0.3, 0.1)
    CHECK(derive_pair_bias({0.6, 0.3, 0.1}, 1, 2) == doctest::Approx(0.75));
    CHECK(derive_pair_bias({0.6, 0.3, 0.1}, 2, 1) == doctest::Approx(0.25));
}

TEST_CASE("build_ws_hamiltonian: fully connected pair with uniform bias") {
    const auto M = build_ws_hamiltonian(complete_graph(2), {0.5, 0.5});
    CHECK(std::abs(M.m(0, 0)) < 1e-15);
    CHECK(std::abs(M.m(1, 1)) < 1e-15);
    CHECK(std::abs(M.m(0, 1) - cplx(-1, 0)) < 1e-15);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M.m);
    CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
    CHECK(es.eigenvalues()(1) == doctest::Approx(1.0));
}

TEST_CASE("build_ws_hamiltonian: uniform ring has the uniform ground vector") {
    const auto M = build_ws_hamiltonian(ring_graph(4), {0.25, 0.25, 0.25, 0.25});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M.m);
    CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
    const auto v = es.eigenvectors().col(0);
    const auto target = Eigen::VectorXcd::Constant(4, 0.5);
    CHECK(std::abs(std::abs((target.adjoint() * v)(0)) - 1.0) < 1e-12);
}

TEST_CASE("build_ws_hamiltonian: biased line of 3 keeps the root-P ground vector") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto P = random_dist(3, rng);
        const auto M = build_ws_hamiltonian(line_graph(3), P);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M.m);
        CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0).epsilon(1e-9));
        const auto v = es.eigenvectors().col(0);
        CHECK(std::abs(std::abs((sqrt_vec(P).adjoint() * v)(0)) - 1.0) < 1e-10);
    }
}

TEST_CASE("spectral ground-state property over random topologies") {
    Rng rng(2222);
    int trials = 0;
    while (trials < 200) {
        const int k = 2 + static_cast<int>(rng.uniform_int(7));
        BlockGraph g;
        switch (rng.uniform_int(4)) {
            case 0: g = complete_graph(k); break;
            case 1: g = ring_graph(k); break;
            case 2: g = line_graph(k); break;
            default: g = random_connected_graph(k, rng); break;
        }
        const auto P = random_dist(k, rng);
        const auto M = build_ws_hamiltonian(g, P);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M.m);
        CHECK(std::abs(es.eigenvalues()(0) + 1.0) < 1e-9);
        const auto v = es.eigenvectors().col(0);
        CHECK(std::abs((sqrt_vec(P).adjoint() * v)(0)) >= 1.0 - 1e-10);
        if (k > 1) CHECK(es.eigenvalues()(1) > -1.0 + 1e-12);  // unique ground state
        ++trials;
    }
}

TEST_CASE("disconnected topologies keep root-P at energy -1 (possibly degenerate)") {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        // two components plus an isolated vertex
        const int k = 5;
        BlockGraph g = make_block_graph(k, {{0, 1}, {2, 3}});
        const auto P = random_dist(k, rng);
        const auto M = build_ws_hamiltonian(g, P);
        const auto v = sqrt_vec(P);
        const Eigen::VectorXcd residual = M.m * v + v;
        CHECK(residual.norm() < 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M.m);
        CHECK(std::abs(es.eigenvalues()(0) + 1.0) < 1e-9);
    }
}

TEST_CASE("uniform bias on the complete graph reduces to the standard mixer") {
    for (int k : {2, 3, 5, 8}) {
        const std::vector<double> uni(k, 1.0 / k);
        const auto M = build_ws_hamiltonian(complete_graph(k), uni);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                const double expected = i == j ? 0.0 : -1.0 / (k - 1);
                CHECK(std::abs(M.m(i, j) - cplx(expected, 0)) < 1e-12);
            }
    }
}

TEST_CASE("edge coloring: canonical families") {
    const auto single = edge_coloring(2, {{0, 1}});
    CHECK(single.size() == 1);

    // even ring: exactly two parity classes
    const auto c6 = edge_coloring(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
    REQUIRE(c6.size() == 2);
    CHECK(c6[0] == Matching{{0, 1}, {2, 3}, {4, 5}});
    CHECK(c6[1] == Matching{{1, 2}, {3, 4}, {0, 5}});

    // odd ring: parity classes plus the closing edge
    const auto c5 = edge_coloring(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    REQUIRE(c5.size() == 3);
    CHECK(c5[2] == Matching{{0, 4}});

    // triangle needs three one-edge layers (max degree 2, no 2-colouring exists)
    const auto k3 = edge_coloring(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(k3.size() == 3);
    for (const auto& layer : k3) CHECK(layer.size() == 1);
}

TEST_CASE("edge coloring: fuzzed graphs satisfy the matching-cover contract") {
    Rng rng(909);
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 2 + static_cast<int>(rng.uniform_int(9));
        std::vector<Edge> edges;
        for (int u = 0; u < k; ++u)
            for (int v = u + 1; v < k; ++v)
                if (rng.uniform() < 0.45) edges.push_back({u, v});
        if (edges.empty()) edges.push_back({0, 1});
        const auto g = make_block_graph(k, edges);
        check_proper_coloring(k, g.edges, g.coloring, g.max_degree);
    }
}

TEST_CASE("ws_xy_block_angles: anchors") {
    const auto zero = ws_xy_block_angles(0.37, 0.0);
    CHECK(zero.phi1 == doctest::Approx(0.0));
    CHECK(zero.phi2 == doctest::Approx(0.0));

    const auto mid = ws_xy_block_angles(0.5, 0.3);
    CHECK(mid.phi1 == doctest::Approx(0.0));
    CHECK(mid.phi2 == doctest::Approx(0.3));
}

TEST_CASE("ws_xy_block_angles: assembled block equals the exact exponential") {
    // 41 x 41 grid over the open unit interval and a full angle sweep
    double max_dev = 0.0;
    for (int iq = 0; iq < 41; ++iq) {
        const double q = (iq + 1) / 42.0;
        for (int ib = 0; ib < 41; ++ib) {
            const double beta = -kPi + 2.0 * kPi * ib / 40.0;
            const auto a = ws_xy_block_angles(q, beta);
            // [[e^{-i phi1} cos phi2, i sin phi2], [i sin phi2, e^{i phi1} cos phi2]]
            const cplx m00 = std::polar(std::cos(a.phi2), -a.phi1);
            const cplx m01 = cplx(0, std::sin(a.phi2));
            const cplx m11 = std::polar(std::cos(a.phi2), a.phi1);

            Eigen::MatrixXcd H(2, 2);
            const double s = 2.0 * std::sqrt(q * (1 - q));
            H << 1 - 2 * q, -s, -s, 2 * q - 1;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
            Eigen::VectorXcd ph(2);
            for (int i = 0; i < 2; ++i) ph(i) = std::polar(1.0, -beta * es.eigenvalues()(i));
            const Eigen::MatrixXcd E =
                es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();

            max_dev = std::max({max_dev, std::abs(m00 - E(0, 0)), std::abs(m01 - E(0, 1)),
                                std::abs(m01 - E(1, 0)), std::abs(m11 - E(1, 1))});
        }
    }
    CHECK(max_dev < 1e-12);
}

TEST_CASE("ws_pair_unitary matches the angle decomposition") {
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const double q = 0.02 + 0.96 * rng.uniform();
        const double beta = (rng.uniform() - 0.5) * 2 * kPi;
        const auto U = ws_pair_unitary(q, beta, false);
        const auto a = ws_xy_block_angles(q, beta);
        CHECK(std::abs(U.a - std::polar(std::cos(a.phi2), -a.phi1)) < 1e-12);
        CHECK(std::abs(U.b - cplx(0, std::sin(a.phi2))) < 1e-12);
        CHECK(std::abs(U.d - std::polar(std::cos(a.phi2), a.phi1)) < 1e-12);
        CHECK(U.is_unitary());
    }
}

TEST_CASE("scaled_block_params") {
    const auto s1 = scaled_block_params(0.5, 0.77);
    CHECK(s1.beta_scaled == doctest::Approx(0.77));
    CHECK(s1.phi_sector == doctest::Approx(0.0));

    const auto s2 = scaled_block_params(0.1, 0.5);
    CHECK(s2.beta_scaled == doctest::Approx(0.5 / (2 * std::sqrt(0.09))));
    CHECK(s2.beta_scaled == doctest::Approx(0.83333).epsilon(1e-4));

    CHECK_THROWS_AS(scaled_block_params(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(scaled_block_params(1.0, 0.1), std::invalid_argument);
}

TEST_CASE("scaled pair block equals the exponential of the rescaled generator") {
    Rng rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        const double q = 0.05 + 0.9 * rng.uniform();
        const double beta = (rng.uniform() - 0.5) * 2 * kPi;
        // H~ = (H + I)/(2 sqrt(q(1-q))) - I on the one-excitation pair sector
        const double sc = 1.0 / (2.0 * std::sqrt(q * (1 - q)));
        Eigen::MatrixXcd H(2, 2);
        const double s = 2.0 * std::sqrt(q * (1 - q));
        H << 1 - 2 * q, -s, -s, 2 * q - 1;
        const Eigen::MatrixXcd Ht =
            sc * (H + Eigen::MatrixXcd::Identity(2, 2)) - Eigen::MatrixXcd::Identity(2, 2);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Ht);
        Eigen::VectorXcd ph(2);
        for (int i = 0; i < 2; ++i) ph(i) = std::polar(1.0, -beta * es.eigenvalues()(i));
        const Eigen::MatrixXcd E =
            es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();

        const auto U = ws_pair_unitary(q, beta, true);
        CHECK(std::abs(U.a - E(0, 0)) < 1e-12);
        CHECK(std::abs(U.b - E(0, 1)) < 1e-12);
        CHECK(std::abs(U.c - E(1, 0)) < 1e-12);
        CHECK(std::abs(U.d - E(1, 1)) < 1e-12);

        // ground vector (sqrt q, sqrt(1-q)) picks up exp(+i beta)
        const Eigen::VectorXcd g = (Eigen::VectorXcd(2) << std::sqrt(q), std::sqrt(1 - q)).finished();
        const Eigen::VectorXcd evolved = E * g;
        CHECK((evolved - std::polar(1.0, beta) * g).norm() < 1e-12);
    }
}

namespace {

std::shared_ptr<const BlockLayout> single_block_layout(int k) {
    Block b;
    b.id = 0;
    for (int i = 0; i < k; ++i) b.vars.push_back(i);
    return std::make_shared<const BlockLayout>(std::vector<Block>{b});
}

MixerTopology wrap(BlockGraph g) {
    MixerTopology t;
    t.blocks.push_back(std::move(g));
    return t;
}

ProbabilityTable single_table(std::vector<double> p) {
    ProbabilityTable t;
    t.rows.push_back(std::move(p));
    return t;
}

}  // namespace

TEST_CASE("apply_ws_mixer: beta = 0 is the identity") {
    Rng rng(8);
    auto layout = single_block_layout(4);
    const auto P = single_table(random_dist(4, rng));
    for (int T : {1, 3}) {
        auto s = init_wp_state(layout, P);
        const auto before = s.amplitudes();
        apply_ws_mixer(s, wrap(complete_graph(4)), P, 0.0, T, true);
        for (std::size_t i = 0; i < before.size(); ++i)
            CHECK(std::abs(s.amplitude(i) - before[i]) < 1e-14);
    }
}

TEST_CASE("apply_ws_mixer: the prepared state acquires exp(+i beta) on every topology") {
    Rng rng(99);
    const double beta = 0.83;
    for (int k : {3, 4, 5, 6}) {
        for (int topo = 0; topo < 3; ++topo) {
            for (bool scaled : {false, true}) {
                auto layout = single_block_layout(k);
                const auto P = single_table(random_dist(k, rng));
                auto s = init_wp_state(layout, P);
                const auto before = s.amplitudes();
                BlockGraph g = topo == 0   ? complete_graph(k)
                               : topo == 1 ? ring_graph(k)
                                           : line_graph(k);
                apply_ws_mixer(s, wrap(std::move(g)), P, beta, 1, scaled);
                const cplx phase = std::polar(1.0, beta);
                for (std::size_t i = 0; i < before.size(); ++i)
                    CHECK(std::abs(s.amplitude(i) - phase * before[i]) < 1e-10);
            }
        }
    }
}

TEST_CASE("apply_ws_mixer: uniform bias reproduces plain pair blocks") {
    // with a uniform table the scaled and unscaled walks coincide
    auto layout = single_block_layout(4);
    const auto P = single_table({0.25, 0.25, 0.25, 0.25});
    auto s1 = init_wp_state(layout, P);
    auto s2 = s1;
    apply_ws_mixer(s1, wrap(ring_graph(4)), P, 1.1, 1, true);
    apply_ws_mixer(s2, wrap(ring_graph(4)), P, 1.1, 1, false);
    for (std::uint64_t i = 0; i < s1.dimension(); ++i)
        CHECK(std::abs(s1.amplitude(i) - s2.amplitude(i)) < 1e-13);
}

TEST_CASE("apply_ws_mixer: product formula converges to the exact evolution") {
    Rng rng(123);
    const double beta = 1.3;
    for (int trial = 0; trial < 5; ++trial) {
        const int k = 5;
        const auto g = random_connected_graph(k, rng);
        const auto Pv = random_dist(k, rng);
        const auto M = build_ws_hamiltonian(g, Pv);
        const Eigen::MatrixXcd exact = exact_mixer_evolution(M, beta);

        auto layout = single_block_layout(k);
        double prev_err = -1.0;
        for (int T : {1, 2, 4, 8}) {
            // build the product-formula operator column by column
            Eigen::MatrixXcd approx(k, k);
            for (int col = 0; col < k; ++col) {
                std::vector<cplx> amps(k, cplx(0, 0));
                amps[col] = 1.0;
                SubspaceState s(layout, std::move(amps));
                apply_ws_mixer(s, wrap(g), single_table(Pv), beta, T, false);
                for (int row = 0; row < k; ++row) approx(row, col) = s.amplitude(row);
            }
            const double err = (approx - exact).norm();
            if (prev_err >= 0.0) CHECK(err < prev_err);
            prev_err = err;
        }
        CHECK(prev_err < 0.05);
    }
}

TEST_CASE("exact_mixer_evolution basics") {
    const auto M = build_ws_hamiltonian(complete_graph(2), {0.5, 0.5});
    const auto I = exact_mixer_evolution(M, 0.0);
    CHECK((I - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-14);

    // full transfer at beta = pi/2 for the uniform pair
    const auto U = exact_mixer_evolution(M, kPi / 2);
    CHECK(std::abs(std::abs(U(0, 1)) - 1.0) < 1e-12);
    CHECK((U * U.adjoint() - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);

    // the root-P vector picks up exp(+i beta)
    Rng rng(4);
    const auto P = random_dist(6, rng);
    const auto M6 = build_ws_hamiltonian(complete_graph(6), P);
    const auto U6 = exact_mixer_evolution(M6, 0.9);
    const Eigen::VectorXcd v = sqrt_vec(P);
    CHECK((U6 * v - std::polar(1.0, 0.9) * v).norm() < 1e-12);
}

TEST_CASE("non-uniform bias breaks the standard mixer's ground-state property") {
    Rng rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 2 + static_cast<int>(rng.uniform_int(7));
        const std::vector<double> uni(k, 1.0 / k);
        auto P = random_dist(k, rng);
        double l1 = 0.0;
        for (int i = 0; i < k; ++i) l1 += std::abs(P[i] - uni[i]);
        if (l1 <= 0.1) continue;
        const auto M = build_ws_hamiltonian(complete_graph(k), uni);  // standard mixer
        const Eigen::VectorXcd v = sqrt_vec(P);
        CHECK((M.m * v + v).norm() > 1e-3);
    }
}
