#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wsxy/generators.hpp"
#include "wsxy/mixer.hpp"
#include "wsxy/rng.hpp"
#include "wsxy/synth.hpp"

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

double fidelity_with_wp(const Circuit& circ, const std::vector<double>& P) {
    const auto psi = dense_simulate(circ);
    const int k = circ.n;
    cplx overlap(0, 0);
    for (int i = 0; i < k; ++i) {
        const std::uint64_t idx = 1ULL << (k - 1 - i);  // |e_i>
        overlap += std::sqrt(P[i]) * std::conj(psi[idx]);
    }
    return std::norm(overlap);
}

// 4x4 matrix of a 2-qubit circuit via column-wise simulation with X preps
Eigen::MatrixXcd two_qubit_matrix(const Circuit& circ) {
    Eigen::MatrixXcd U(4, 4);
    for (int col = 0; col < 4; ++col) {
        Circuit prep;
        prep.n = 2;
        if (col & 2) prep.add(GateKind::X, {0});
        if (col & 1) prep.add(GateKind::X, {1});
        prep.append(circ);
        const auto psi = dense_simulate(prep);
        for (int row = 0; row < 4; ++row) U(row, col) = psi[row];
    }
    return U;
}

}  // namespace

TEST_CASE("dense_simulate: basics") {
    Circuit empty;
    empty.n = 2;
    auto psi = dense_simulate(empty);
    CHECK(std::abs(psi[0] - cplx(1, 0)) < 1e-15);

    Circuit x;
    x.n = 2;
    x.add(GateKind::X, {0});
    psi = dense_simulate(x);  // qubit 0 is the leftmost bit -> |10>
    CHECK(std::abs(psi[0b10] - cplx(1, 0)) < 1e-15);

    // Bell pair from ry(pi/2) + cx
    Circuit bell;
    bell.n = 2;
    bell.add(GateKind::RY, {0}, {kPi / 2});
    bell.add(GateKind::CNOT, {0, 1});
    psi = dense_simulate(bell);
    CHECK(std::abs(psi[0b00] - cplx(1 / std::sqrt(2.0), 0)) < 1e-12);
    CHECK(std::abs(psi[0b11] - cplx(1 / std::sqrt(2.0), 0)) < 1e-12);
    CHECK(std::abs(psi[0b01]) < 1e-12);
    CHECK(std::abs(psi[0b10]) < 1e-12);

    Circuit too_big;
    too_big.n = 21;
    CHECK_THROWS_AS(dense_simulate(too_big), std::invalid_argument);
}

TEST_CASE("dense_simulate: unitarity on random circuits") {
    Rng rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        Circuit c;
        c.n = 4;
        for (int g = 0; g < 30; ++g) {
            const int a = static_cast<int>(rng.uniform_int(4));
            int b = static_cast<int>(rng.uniform_int(4));
            if (b == a) b = (a + 1) % 4;
            switch (rng.uniform_int(6)) {
                case 0: c.add(GateKind::RX, {a}, {rng.normal()}); break;
                case 1: c.add(GateKind::RY, {a}, {rng.normal()}); break;
                case 2: c.add(GateKind::RZ, {a}, {rng.normal()}); break;
                case 3: c.add(GateKind::CNOT, {a, b}); break;
                case 4: c.add(GateKind::XXplusYY, {a, b}, {rng.normal()}); break;
                default: c.add(GateKind::RZZ, {a, b}, {rng.normal()}); break;
            }
        }
        const auto psi = dense_simulate(c);
        double norm2 = 0.0;
        for (const auto& v : psi) norm2 += std::norm(v);
        CHECK(std::abs(norm2 - 1.0) < 1e-12);
    }
}

TEST_CASE("preparation: k=2 uniform gives the Bell-like pair state") {
    const auto c = synth_wp_preparation({0.5, 0.5}, PrepStyle::Linear);
    const auto psi = dense_simulate(c);
    CHECK(std::abs(psi[0b10] - cplx(1 / std::sqrt(2.0), 0)) < 1e-12);
    CHECK(std::abs(psi[0b01] - cplx(1 / std::sqrt(2.0), 0)) < 1e-12);
}

TEST_CASE("preparation: k=4 linear chain realises the cascade expansion") {
    const std::vector<double> P{0.4, 0.3, 0.2, 0.1};
    const auto c = synth_wp_preparation(P, PrepStyle::Linear);
    // one X, then three cry+cx pairs
    const auto counts = c.gate_counts();
    CHECK(counts.at("x") == 1);
    CHECK(counts.at("cry") == 3);
    CHECK(counts.at("cx") == 3);
    const auto psi = dense_simulate(c);
    for (int i = 0; i < 4; ++i) {
        const std::uint64_t idx = 1ULL << (3 - i);
        CHECK(std::abs(psi[idx] - cplx(std::sqrt(P[i]), 0)) < 1e-12);
    }
    CHECK(fidelity_with_wp(c, P) >= 1.0 - 1e-12);
}

TEST_CASE("preparation: both styles are exact for random distributions") {
    Rng rng(12);
    for (int k = 2; k <= 8; ++k) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto P = random_dist(k, rng);
            for (auto style : {PrepStyle::Linear, PrepStyle::Center}) {
                const auto c = synth_wp_preparation(P, style);
                CHECK(fidelity_with_wp(c, P) >= 1.0 - 1e-10);
            }
        }
    }
}

TEST_CASE("preparation: center style halves the two-qubit depth at k=5") {
    Rng rng(3);
    const auto P = random_dist(5, rng);
    const auto lin = synth_wp_preparation(P, PrepStyle::Linear);
    const auto cen = synth_wp_preparation(P, PrepStyle::Center);
    CHECK(cen.two_qubit_depth() <= 4);  // ceil((k-1)/2) * 2
    CHECK(cen.two_qubit_depth() < lin.two_qubit_depth());
}

TEST_CASE("preparation: tree style is recognised but rejected") {
    CHECK_THROWS_AS(synth_wp_preparation({0.5, 0.5}, PrepStyle::Tree), std::invalid_argument);
    CHECK(prep_style_from_string("tree") == PrepStyle::Tree);
}

TEST_CASE("pair block circuit: identity at beta = 0") {
    const auto c = synth_ws_xy_block(0.3, 0.0, false);
    for (const auto& g : c.gates)
        for (double p : g.params) CHECK(p == doctest::Approx(0.0));
}

TEST_CASE("pair block circuit: q = 1/2 unscaled reduces to the bare XY rotation") {
    const auto c = synth_ws_xy_block(0.5, 0.77, false);
    // phi1 = 0: both rz angles vanish, one xx_plus_yy(2 beta) remains
    double rz_total = 0.0;
    double xy_angle = 0.0;
    for (const auto& g : c.gates) {
        if (g.kind == GateKind::RZ) rz_total += std::abs(g.params[0]);
        if (g.kind == GateKind::XXplusYY) xy_angle = g.params[0];
    }
    CHECK(rz_total == doctest::Approx(0.0));
    CHECK(xy_angle == doctest::Approx(2 * 0.77));
}

TEST_CASE("pair block circuit: dense matrix equals the pair generator exponential") {
    Rng rng(17);
    for (bool scaled : {false, true}) {
        for (int trial = 0; trial < 40; ++trial) {
            const double q = 0.05 + 0.9 * rng.uniform();
            const double beta = (rng.uniform() - 0.5) * 2 * kPi;
            const auto U = two_qubit_matrix(synth_ws_xy_block(q, beta, scaled));
            const auto B = ws_pair_unitary(q, beta, scaled);
            // circuit qubit 0 carries e_i = |10>, qubit 1 carries e_j = |01>
            CHECK(std::abs(U(0b10, 0b10) - B.a) < 1e-12);
            CHECK(std::abs(U(0b10, 0b01) - B.b) < 1e-12);
            CHECK(std::abs(U(0b01, 0b10) - B.c) < 1e-12);
            CHECK(std::abs(U(0b01, 0b01) - B.d) < 1e-12);
            // the empty sector is untouched regardless of variant
            CHECK(std::abs(U(0b00, 0b00) - cplx(1, 0)) < 1e-12);

            // the full-space embedding commutes with the pair number operator
            Eigen::MatrixXcd N = Eigen::MatrixXcd::Zero(4, 4);
            N(0b01, 0b01) = 1;
            N(0b10, 0b10) = 1;
            N(0b11, 0b11) = 2;
            CHECK((U * N - N * U).norm() < 1e-12);
        }
    }
}

TEST_CASE("qasm: export basics and empty circuit") {
    Circuit empty;
    empty.n = 3;
    const auto text = export_qasm(empty);
    CHECK(text.find("OPENQASM 3.0;") != std::string::npos);
    CHECK(text.find("qubit[3] q;") != std::string::npos);
    CHECK(text.find("q[0]") == std::string::npos);

    Circuit rz;
    rz.n = 1;
    rz.add(GateKind::RZ, {0}, {0.5});
    CHECK(export_qasm(rz).find("rz(0.5) q[0];") != std::string::npos);
}

TEST_CASE("qasm: round trip preserves the statevector") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        Circuit c;
        c.n = 3;
        c.global_phase = rng.normal();
        c.add(GateKind::X, {0});
        c.add(GateKind::CRY, {0, 1}, {rng.normal()});
        c.add(GateKind::CNOT, {1, 0});
        c.add(GateKind::XXplusYY, {1, 2}, {rng.normal()});
        c.add(GateKind::RZZ, {0, 2}, {rng.normal()});
        c.add(GateKind::Phase, {2}, {rng.normal()});
        c.add(GateKind::SWAP, {0, 2});
        c.add(GateKind::RX, {1}, {rng.normal()});

        const auto parsed = parse_qasm(export_qasm(c));
        CHECK(parsed.n == c.n);
        const auto a = dense_simulate(c);
        const auto b = dense_simulate(parsed);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);

        // exporting the parsed circuit again is stable
        CHECK(export_qasm(parsed) == export_qasm(parse_qasm(export_qasm(parsed))));
    }
}

TEST_CASE("gate-list JSON round trip") {
    Circuit c;
    c.n = 2;
    c.global_phase = -0.25;
    c.add(GateKind::RY, {0}, {1.25});
    c.add(GateKind::XXplusYY, {0, 1}, {0.5});
    const auto j = c.to_json();
    const auto back = Circuit::from_json(j);
    CHECK(back.n == 2);
    CHECK(back.global_phase == doctest::Approx(-0.25));
    REQUIRE(back.gates.size() == 2);
    CHECK(back.gates[1].kind == GateKind::XXplusYY);
    CHECK(back.gates[1].params[0] == doctest::Approx(0.5));
}

TEST_CASE("depth metrics are pure functions of the gate list") {
    Circuit c;
    c.n = 4;
    c.add(GateKind::CNOT, {0, 1});
    c.add(GateKind::CNOT, {2, 3});  // parallel with the first
    c.add(GateKind::CNOT, {1, 2});  // depends on both
    c.add(GateKind::RZ, {0}, {0.1});
    CHECK(c.depth() == 2);
    CHECK(c.two_qubit_depth() == 2);
    const auto counts = c.gate_counts();
    CHECK(counts.at("cx") == 3);
    CHECK(counts.at("rz") == 1);
}

TEST_CASE("full synthesis: p = 0 equals the preparation alone") {
    const auto problem = gen_max_k_cut(4, 2, 5);
    const auto topo = make_topology(problem.layout, TopologyKind::Complete);
    const auto P = uniform_table(problem.layout);
    LinearSchedule s;
    s.p = 0;
    const auto c = synth_ws_qaoa(problem, topo, P, s);
    Circuit prep_only;
    prep_only.n = problem.layout.num_variables();
    for (int l = 0; l < problem.layout.num_blocks(); ++l)
        prep_only.append(synth_wp_preparation(P.rows[l], PrepStyle::Linear),
                         problem.layout.qubit_offset(l));
    CHECK(c.gates.size() == prep_only.gates.size());
    CHECK(c.global_phase == doctest::Approx(0.0));
}

TEST_CASE("full synthesis: line-mixer triplet emits the four-factor layer structure") {
    // one k=3 block with a path topology: layer {(0,1)} with idle phase on 2,
    // then layer {(1,2)} with idle phase on 0
    OneHotProblem problem;
    problem.objective.add_linear(0, 0.5);
    Block b;
    b.id = 0;
    b.vars = {0, 1, 2};
    problem.layout = BlockLayout({b});
    const auto topo = make_topology(problem.layout, TopologyKind::Line);
    LinearSchedule s;
    s.p = 1;
    s.beta0 = 0.9;
    s.gamma0 = 0.0;
    const auto c = synth_ws_qaoa(problem, topo, uniform_table(problem.layout), s);

    std::vector<int> phase_targets;
    std::vector<std::vector<int>> xy_targets;
    for (const auto& g : c.gates) {
        if (g.kind == GateKind::Phase && std::abs(g.params[0] - 0.45) < 1e-12)
            phase_targets.push_back(g.qubits[0]);
        if (g.kind == GateKind::XXplusYY) xy_targets.push_back(g.qubits);
    }
    REQUIRE(xy_targets.size() == 2);
    CHECK(xy_targets[0] == std::vector<int>{0, 1});
    CHECK(xy_targets[1] == std::vector<int>{1, 2});
    // idle phases exp(+i beta/2) land on positions 3 and 1 respectively
    CHECK(phase_targets == std::vector<int>{2, 0});
}

TEST_CASE("feasible projection bookkeeping") {
    Block b;
    b.id = 0;
    b.vars = {0, 1};
    BlockLayout layout({b});
    // dense |10> = index 2 corresponds to multi-index 0
    CHECK(feasible_dense_index(layout, 0) == 0b10);
    CHECK(feasible_dense_index(layout, 1) == 0b01);
    std::vector<cplxv> dense(4, cplxv(0, 0));
    dense[0b10] = std::sqrt(0.7);
    dense[0b01] = std::sqrt(0.25);
    dense[0b11] = std::sqrt(0.05);  // leakage
    const auto proj = project_feasible(layout, dense);
    CHECK(std::abs(proj.amplitudes[0] - cplxv(std::sqrt(0.7), 0)) < 1e-12);
    CHECK(proj.leakage == doctest::Approx(0.05));
}
