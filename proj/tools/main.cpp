// wsxy: batch experiment driver for warm-started XY-mixer QAOA studies.
//
// Subcommands: gen, run-iws, landscape, synth, repair. All outputs are
// seed-reproducible; failures exit nonzero with a JSON diagnostic on stderr.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wsxy/generators.hpp"
#include "wsxy/hardware.hpp"
#include "wsxy/iws.hpp"
#include "wsxy/metrics.hpp"
#include "wsxy/parallel.hpp"
#include "wsxy/qaoa.hpp"
#include "wsxy/repair.hpp"
#include "wsxy/serialize.hpp"
#include "wsxy/synth.hpp"

using nlohmann::json;
using namespace wsxy;

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) s[i] = '1';
    return s;
}

std::vector<std::uint8_t> bits_from_string(const std::string& s) {
    std::vector<std::uint8_t> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c == '0' || c == '1')
            bits.push_back(c == '1');
        else if (!std::isspace(static_cast<unsigned char>(c)))
            throw std::runtime_error("bad bitstring character");
    }
    return bits;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
    std::string family;
    int n = 8, k = 3, swap_layers = 3;
    double lambda = 2.0;
    std::uint64_t seed = 0;
    std::string map_path, out;
    bool filter = true;
};

int cmd_gen(const GenArgs& a) {
    OneHotProblem p;
    if (a.family == "mkc") {
        p = gen_max_k_cut(a.n, a.k, a.seed);
    } else if (a.family == "tsp") {
        p = gen_tsp(a.n, a.seed, a.lambda);
    } else if (a.family == "hw") {
        HardwareMap map = load_hardware_map(a.map_path);
        if (a.filter) map = map.filtered();
        p = gen_hardware_instance(map, a.n, a.swap_layers, a.seed);
    } else {
        throw std::runtime_error("unknown family: " + a.family);
    }
    save_problem(p, a.out);
    json summary{{"family", p.family},
                 {"blocks", p.layout.num_blocks()},
                 {"qubits", p.layout.num_variables()},
                 {"dimension", p.layout.dimension()},
                 {"out", a.out}};
    std::cout << summary.dump() << "\n";
    return 0;
}

// ------------------------------------------------------------- run-iws

struct RunIwsArgs {
    std::string problem_path, out_prefix = "iws", topology = "complete", sampler = "quantum";
    std::string clamp_mode = "project", config_path;
    IwsConfig cfg;
    int reps = 1;
    bool unscaled = false;
};

int cmd_run_iws(RunIwsArgs& a, const CLI::App* sub) {
    // precedence: flags > config file > defaults
    if (!a.config_path.empty()) {
        const json j = json::parse(read_text(a.config_path));
        const auto maybe = [&](const char* flag, auto&& set) {
            if (sub->count(flag) == 0) set();
        };
        if (j.contains("p")) maybe("--p", [&] { a.cfg.p = j["p"]; });
        if (j.contains("m")) maybe("--m", [&] { a.cfg.shots_per_iter = j["m"]; });
        if (j.contains("m_total")) maybe("--m-total", [&] { a.cfg.total_shots = j["m_total"]; });
        if (j.contains("eps")) maybe("--eps", [&] { a.cfg.eps = j["eps"]; });
        if (j.contains("beta_temp")) maybe("--beta-temp", [&] { a.cfg.beta_temp = j["beta_temp"]; });
        if (j.contains("seed")) maybe("--seed", [&] { a.cfg.seed = j["seed"]; });
        if (j.contains("sampler")) maybe("--sampler", [&] { a.sampler = j["sampler"]; });
        if (j.contains("multistart")) maybe("--multistart", [&] { a.cfg.multistart = j["multistart"]; });
    }
    a.cfg.sampler = sampler_kind_from_string(a.sampler);
    a.cfg.clamp_mode = a.clamp_mode == "rescale" ? ClampMode::Rescale : ClampMode::Project;
    a.cfg.qaoa.scaled_blocks = !a.unscaled;

    const OneHotProblem problem = load_problem(a.problem_path);
    const MixerTopology topo = make_topology(problem.layout, topology_kind_from_string(a.topology));
    const bool quantum = a.cfg.sampler == SamplerKind::Quantum;

    std::optional<CostDiagonal> diag;
    try {
        diag = build_cost_diagonal(problem);
    } catch (const std::runtime_error&) {
        if (quantum) throw;  // random sampling can proceed without the diagonal
    }

    // one schedule optimisation at the uniform table, shared across repetitions
    std::optional<LinearSchedule> schedule;
    int optimizer_invocations = 0;
    if (quantum) {
        const auto opt = optimize_parameters(problem, *diag, topo, uniform_table(problem.layout),
                                             a.cfg.p, a.cfg.multistart, a.cfg.seed, a.cfg.qaoa);
        schedule = opt.schedule;
        optimizer_invocations = 1;
    }

    std::vector<IwsRun> runs(a.reps);
    parallel_for(a.reps, [&](std::size_t rep) {
        IwsConfig cfg = a.cfg;
        cfg.seed = Rng::derive(a.cfg.seed, rep);
        runs[rep] = run_iws(problem, topo, cfg, diag ? &*diag : nullptr, schedule);
    });

    std::ostringstream jsonl;
    jsonl.precision(17);
    for (int rep = 0; rep < a.reps; ++rep) {
        for (std::size_t t = 0; t < runs[rep].iterations.size(); ++t) {
            const auto& it = runs[rep].iterations[t];
            json rec{{"rep", rep},           {"iter", t},
                     {"shots", it.shots},    {"m_agg", it.m_agg},
                     {"e_min", it.e_min},    {"e_max", it.e_max},
                     {"e_mean", it.e_mean},  {"spread", it.spread},
                     {"best_so_far", it.best_so_far}};
            rec["p_opt"] = it.popt >= 0.0 ? json(it.popt) : json(nullptr);
            rec["P"] = it.P.rows;
            jsonl << rec.dump() << "\n";
        }
    }
    write_text(a.out_prefix + ".runs.jsonl", jsonl.str());

    for (int rep = 0; rep < a.reps; ++rep) {
        std::ostringstream best;
        write_best_energy_csv(best, empirical_best_trace(runs[rep].sample_energies));
        write_text(a.out_prefix + ".rep" + std::to_string(rep) + ".best.csv", best.str());

        std::ostringstream probs;
        probs.precision(17);
        probs << "iter,block,pos,prob\n";
        for (std::size_t t = 0; t < runs[rep].iterations.size(); ++t) {
            const auto& P = runs[rep].iterations[t].P;
            for (int l = 0; l < P.num_blocks(); ++l)
                for (std::size_t i = 0; i < P.rows[l].size(); ++i)
                    probs << t << "," << l << "," << i << "," << P.rows[l][i] << "\n";
        }
        write_text(a.out_prefix + ".rep" + std::to_string(rep) + ".probs.csv", probs.str());
    }

    double best = runs[0].best_energy;
    int quantum_invocations = 0;
    for (const auto& r : runs) {
        best = std::min(best, r.best_energy);
        quantum_invocations += r.quantum_invocations;
        optimizer_invocations += r.optimizer_invocations;
    }
    json summary{{"reps", a.reps},
                 {"best_energy", best},
                 {"quantum_invocations", quantum_invocations},
                 {"optimizer_invocations", optimizer_invocations},
                 {"out_prefix", a.out_prefix}};
    if (diag) summary["e_opt"] = diag->e_opt;
    if (schedule)
        summary["schedule"] = {{"beta0", schedule->beta0},
                               {"dbeta", schedule->dbeta},
                               {"gamma0", schedule->gamma0},
                               {"dgamma", schedule->dgamma},
                               {"p", schedule->p}};
    std::vector<double> first_popt, final_popt;
    for (const auto& r : runs) {
        if (!r.iterations.empty() && r.iterations.front().popt >= 0.0) {
            first_popt.push_back(r.iterations.front().popt);
            final_popt.push_back(r.iterations.back().popt);
        }
    }
    if (!first_popt.empty()) {
        const auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            const std::size_t n = v.size();
            return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
        };
        summary["p_opt_first_median"] = median(first_popt);
        summary["p_opt_final_median"] = median(final_popt);
    }
    std::cout << summary.dump() << "\n";
    return 0;
}

// ------------------------------------------------------------ landscape

struct LandscapeArgs {
    std::string problem_path, out = "landscape.csv", topology = "complete";
    int res = 16, p = 5;
    double eps = 0.1, dbeta_max = 3.141592653589793, dgamma_max = 2.0;
    bool aligned = false, unaligned = false, unscaled = false;
};

int cmd_landscape(const LandscapeArgs& a) {
    if (a.aligned && a.unaligned)
        throw std::runtime_error("choose at most one of --aligned / --unaligned");
    const OneHotProblem problem = load_problem(a.problem_path);
    const CostDiagonal diag = build_cost_diagonal(problem);
    const MixerTopology topo = make_topology(problem.layout, topology_kind_from_string(a.topology));

    ProbabilityTable P = uniform_table(problem.layout);
    if (a.aligned || a.unaligned)  // warm start at the clamped ideal solution
        P = clamp(assignment_table(problem.layout, diag.optima.front()), a.eps);
    QaoaOpts opts;
    opts.scaled_blocks = !a.unscaled;
    opts.mixer_biased = !a.unaligned;

    const Landscape ls = landscape_grid(problem, diag, topo, P, a.p, a.res, a.res, opts,
                                        a.dbeta_max, a.dgamma_max);
    std::ostringstream csv;
    csv.precision(17);
    csv << "dbeta,dgamma,r\n";
    for (std::size_t ib = 0; ib < ls.dbeta_axis.size(); ++ib)
        for (std::size_t ig = 0; ig < ls.dgamma_axis.size(); ++ig)
            csv << ls.dbeta_axis[ib] << "," << ls.dgamma_axis[ig] << ","
                << ls.r[ib * ls.dgamma_axis.size() + ig] << "\n";
    write_text(a.out, csv.str());

    json summary{{"rows", ls.r.size()}, {"max_r", ls.max_r()}, {"out", a.out}};
    std::cout << summary.dump() << "\n";
    return 0;
}

// -------------------------------------------------------------- synth

struct SynthArgs {
    std::string problem_path, p_file, qasm_out, json_out, topology = "complete";
    std::string prep_style = "linear";
    int p = 1;
    double beta0 = 0.9, dbeta = 0.0, gamma0 = 0.58, dgamma = 0.0;
    bool unscaled = false, verify = false;
};

int cmd_synth(const SynthArgs& a) {
    const OneHotProblem problem = load_problem(a.problem_path);
    ProbabilityTable P = uniform_table(problem.layout);
    if (!a.p_file.empty()) P = table_from_json(read_text(a.p_file));
    const MixerTopology topo = make_topology(problem.layout, topology_kind_from_string(a.topology));
    LinearSchedule sched{a.beta0, a.dbeta, a.gamma0, a.dgamma, a.p};
    QaoaOpts opts;
    opts.scaled_blocks = !a.unscaled;

    const Circuit circ =
        synth_ws_qaoa(problem, topo, P, sched, opts, prep_style_from_string(a.prep_style));
    if (!a.qasm_out.empty()) write_text(a.qasm_out, export_qasm(circ));
    if (!a.json_out.empty()) write_text(a.json_out, circ.to_json());

    json report{{"qubits", circ.n},
                {"gates", circ.gates.size()},
                {"depth", circ.depth()},
                {"two_qubit_depth", circ.two_qubit_depth()},
                {"counts", circ.gate_counts()}};
    if (a.verify) {
        if (circ.n > 12) throw std::runtime_error("--verify requires n <= 12");
        const CostDiagonal diag = build_cost_diagonal(problem);
        const auto outcome = run_ws_qaoa_state(problem, diag, topo, P, sched, opts);
        const auto proj = project_feasible(problem.layout, dense_simulate(circ));
        double max_dev = 0.0;
        for (std::uint64_t m = 0; m < problem.layout.dimension(); ++m)
            max_dev = std::max(max_dev,
                               std::abs(proj.amplitudes[m] - outcome.state.amplitude(m)));
        report["verify"] = {{"max_amplitude_dev", max_dev}, {"leakage", proj.leakage}};
        if (max_dev > 1e-9 || proj.leakage > 1e-12) {
            std::cout << report.dump() << "\n";
            throw std::runtime_error("verification failed");
        }
    }
    std::cout << report.dump() << "\n";
    return 0;
}

// -------------------------------------------------------------- repair

struct RepairArgs {
    std::string problem_path, samples_path, out = "repaired.txt", hist_out;
    double lambda = 10.0, f_bit = 0.0;
    std::uint64_t seed = 0;
};

int cmd_repair(const RepairArgs& a) {
    const OneHotProblem problem = load_problem(a.problem_path);
    std::vector<std::vector<std::uint8_t>> samples;
    {
        std::istringstream in(read_text(a.samples_path));
        std::string line;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            auto bits = bits_from_string(line);
            if (static_cast<int>(bits.size()) != problem.layout.num_variables())
                throw std::runtime_error("sample length does not match problem");
            samples.push_back(std::move(bits));
        }
    }
    Rng rng(a.seed);
    if (a.f_bit > 0.0)
        for (auto& s : samples) s = corrupt_sample(s, a.f_bit, rng);

    std::map<int, int> histogram;
    std::ostringstream out;
    double best = 0.0;
    bool any = false;
    int still_infeasible = 0;
    for (const auto& s : samples) {
        ++histogram[count_violations(problem.layout, s)];
        const RepairResult r = greedy_repair(problem, s, a.lambda);
        if (count_violations(problem.layout, r.bits) != 0) ++still_infeasible;
        const double e = problem.evaluate_bits(r.bits);
        if (!any || e < best) best = e;
        any = true;
        out << bits_to_string(r.bits) << "\n";
    }
    write_text(a.out, out.str());
    if (!a.hist_out.empty()) {
        std::ostringstream csv;
        csv << "violations,count\n";
        for (const auto& [v, c] : histogram) csv << v << "," << c << "\n";
        write_text(a.hist_out, csv.str());
    }
    json summary{{"samples", samples.size()},
                 {"still_infeasible", still_infeasible},
                 {"best_energy", best},
                 {"out", a.out}};
    std::cout << summary.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"warm-started XY-mixer QAOA experiment driver"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* sgen = app.add_subcommand("gen", "generate a problem instance");
    sgen->add_option("family", gen.family, "mkc | tsp | hw")->required();
    sgen->add_option("--n", gen.n, "nodes (mkc), cities (tsp) or triplets (hw)");
    sgen->add_option("--k", gen.k, "categories (mkc)");
    sgen->add_option("--lambda", gen.lambda, "time-constraint penalty (tsp)");
    sgen->add_option("--swap-layers", gen.swap_layers, "swap layers (hw)");
    sgen->add_option("--map", gen.map_path, "coupling map JSON (hw)");
    sgen->add_flag("!--no-filter", gen.filter, "skip error-rate filtering (hw)");
    sgen->add_option("--seed", gen.seed);
    sgen->add_option("--out", gen.out)->required();

    RunIwsArgs iws;
    auto* siws = app.add_subcommand("run-iws", "iterative warm-start runs");
    siws->add_option("--problem", iws.problem_path)->required();
    siws->add_option("--p", iws.cfg.p, "circuit layers");
    siws->add_option("--m", iws.cfg.shots_per_iter, "shots per iteration");
    siws->add_option("--m-total", iws.cfg.total_shots, "total shot budget");
    siws->add_option("--eps", iws.cfg.eps, "clamp strength");
    siws->add_option("--beta-temp", iws.cfg.beta_temp, "inverse temperature");
    siws->add_option("--sampler", iws.sampler, "quantum | random");
    siws->add_option("--clamp-mode", iws.clamp_mode, "project | rescale");
    siws->add_option("--reps", iws.reps, "independent repetitions");
    siws->add_option("--seed", iws.cfg.seed);
    siws->add_option("--multistart", iws.cfg.multistart, "schedule optimisation restarts");
    siws->add_option("--topology", iws.topology, "complete | ring | line");
    siws->add_flag("--unscaled", iws.unscaled, "plain (unscaled) mixer blocks");
    siws->add_option("--out-prefix", iws.out_prefix);
    siws->add_option("--config", iws.config_path, "JSON config mirroring these keys");

    LandscapeArgs land;
    auto* sland = app.add_subcommand("landscape", "parameter-landscape sweep");
    sland->add_option("--problem", land.problem_path)->required();
    sland->add_option("--res", land.res, "grid resolution per axis");
    sland->add_option("--p", land.p, "circuit layers");
    sland->add_option("--eps", land.eps, "clamp strength of the ideal-solution warm start");
    sland->add_flag("--aligned", land.aligned, "warm start with matching mixer bias");
    sland->add_flag("--unaligned", land.unaligned, "warm start with uniform mixer bias");
    sland->add_flag("--unscaled", land.unscaled);
    sland->add_option("--topology", land.topology);
    sland->add_option("--dbeta-max", land.dbeta_max);
    sland->add_option("--dgamma-max", land.dgamma_max);
    sland->add_option("--out", land.out);

    SynthArgs synth;
    auto* ssynth = app.add_subcommand("synth", "synthesise a circuit");
    ssynth->add_option("--problem", synth.problem_path)->required();
    ssynth->add_option("--p-file", synth.p_file, "probability table JSON");
    ssynth->add_option("--p", synth.p, "circuit layers");
    ssynth->add_option("--beta0", synth.beta0);
    ssynth->add_option("--dbeta", synth.dbeta);
    ssynth->add_option("--gamma0", synth.gamma0);
    ssynth->add_option("--dgamma", synth.dgamma);
    ssynth->add_option("--topology", synth.topology);
    ssynth->add_option("--prep-style", synth.prep_style, "linear | center");
    ssynth->add_flag("--unscaled", synth.unscaled);
    ssynth->add_option("--qasm", synth.qasm_out, "OpenQASM 3 output path");
    ssynth->add_option("--json", synth.json_out, "gate-list JSON output path");
    ssynth->add_flag("--verify", synth.verify, "check against the subspace simulator (n <= 12)");

    RepairArgs rep;
    auto* srep = app.add_subcommand("repair", "repair constraint-violating samples");
    srep->add_option("--problem", rep.problem_path)->required();
    srep->add_option("--samples", rep.samples_path)->required();
    srep->add_option("--lambda", rep.lambda, "one-hot penalty weight");
    srep->add_option("--f-bit", rep.f_bit, "per-bit corruption probability to inject");
    srep->add_option("--seed", rep.seed);
    srep->add_option("--out", rep.out);
    srep->add_option("--hist", rep.hist_out, "violation histogram CSV");

    try {
        app.parse(argc, argv);
        if (sgen->parsed()) return cmd_gen(gen);
        if (siws->parsed()) return cmd_run_iws(iws, siws);
        if (sland->parsed()) return cmd_landscape(land);
        if (ssynth->parsed()) return cmd_synth(synth);
        if (srep->parsed()) return cmd_repair(rep);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return e.get_exit_code() == 0 ? 1 : e.get_exit_code();
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
