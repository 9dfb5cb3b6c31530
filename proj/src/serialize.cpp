#include "wsxy/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wsxy {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace

std::string problem_to_json(const OneHotProblem& problem) {
    json j;
    j["schema"] = "wsxy.problem/1";
    j["family"] = problem.family;
    j["provenance"] = problem.provenance.empty() ? json::object()
                                                 : json::parse(problem.provenance);
    json obj;
    obj["constant"] = problem.objective.constant();
    auto& lin = obj["linear"] = json::array();
    for (const auto& [v, w] : problem.objective.linear()) lin.push_back({v, w});
    auto& quad = obj["quadratic"] = json::array();
    for (const auto& [key, w] : problem.objective.quadratic())
        quad.push_back({key.first, key.second, w});
    j["objective"] = std::move(obj);
    auto& blocks = j["blocks"] = json::array();
    for (const auto& b : problem.layout.blocks()) blocks.push_back(b.vars);
    auto& fixed = j["fixed"] = json::array();
    for (const auto& [v, val] : problem.fixed) fixed.push_back({v, static_cast<int>(val)});
    if (!problem.labels.empty()) j["labels"] = problem.labels;
    return j.dump(2) + "\n";
}

OneHotProblem problem_from_json(const std::string& text) {
    const json j = json::parse(text);
    OneHotProblem p;
    p.family = j.value("family", "");
    if (j.contains("provenance")) p.provenance = j["provenance"].dump();
    const json& obj = j.at("objective");
    p.objective.add_constant(obj.value("constant", 0.0));
    for (const auto& t : obj.at("linear")) p.objective.add_linear(t.at(0), t.at(1));
    for (const auto& t : obj.at("quadratic"))
        p.objective.add_quadratic(t.at(0), t.at(1), t.at(2));
    std::vector<Block> blocks;
    int id = 0;
    for (const auto& vars : j.at("blocks")) {
        Block b;
        b.id = id++;
        for (const auto& v : vars) b.vars.push_back(v);
        blocks.push_back(std::move(b));
    }
    p.layout = BlockLayout(std::move(blocks));
    if (j.contains("fixed"))
        for (const auto& t : j["fixed"])
            p.fixed.push_back({t.at(0), static_cast<std::uint8_t>(t.at(1).get<int>())});
    if (j.contains("labels")) p.labels = j["labels"].get<std::vector<std::string>>();
    return p;
}

void save_problem(const OneHotProblem& problem, const std::string& path) {
    write_file(path, problem_to_json(problem));
}

OneHotProblem load_problem(const std::string& path) {
    return problem_from_json(read_file(path));
}

HardwareMap hardware_map_from_json(const std::string& text) {
    const json j = json::parse(text);
    HardwareMap m;
    for (const auto& n : j.at("nodes"))
        m.nodes.push_back({n.at("id"), n.value("readout_error", 0.0)});
    for (const auto& e : j.at("edges"))
        m.edges.push_back({e.at("u"), e.at("v"), e.value("error", 0.0)});
    return m;
}

std::string hardware_map_to_json(const HardwareMap& map) {
    json j;
    auto& nodes = j["nodes"] = json::array();
    for (const auto& n : map.nodes) nodes.push_back({{"id", n.id}, {"readout_error", n.readout_error}});
    auto& edges = j["edges"] = json::array();
    for (const auto& e : map.edges)
        edges.push_back({{"u", e.u}, {"v", e.v}, {"error", e.error}});
    return j.dump(2) + "\n";
}

HardwareMap load_hardware_map(const std::string& path) {
    return hardware_map_from_json(read_file(path));
}

std::string table_to_json(const ProbabilityTable& table) {
    json j;
    j["rows"] = table.rows;
    if (table.clamp_eps)
        j["clamp_eps"] = *table.clamp_eps;
    else
        j["clamp_eps"] = nullptr;
    return j.dump(2) + "\n";
}

ProbabilityTable table_from_json(const std::string& text) {
    const json j = json::parse(text);
    ProbabilityTable t;
    t.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    if (j.contains("clamp_eps") && !j["clamp_eps"].is_null())
        t.clamp_eps = j["clamp_eps"].get<double>();
    return t;
}

}  // namespace wsxy
