#include "wsxy/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wsxy {

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::RX: return "rx";
        case GateKind::RY: return "ry";
        case GateKind::RZ: return "rz";
        case GateKind::Phase: return "p";
        case GateKind::X: return "x";
        case GateKind::CNOT: return "cx";
        case GateKind::SWAP: return "swap";
        case GateKind::CRY: return "cry";
        case GateKind::XXplusYY: return "xx_plus_yy";
        case GateKind::RZZ: return "rzz";
    }
    return "?";
}

GateKind gate_kind_from_name(const std::string& name) {
    if (name == "rx") return GateKind::RX;
    if (name == "ry") return GateKind::RY;
    if (name == "rz") return GateKind::RZ;
    if (name == "p") return GateKind::Phase;
    if (name == "x") return GateKind::X;
    if (name == "cx") return GateKind::CNOT;
    if (name == "swap") return GateKind::SWAP;
    if (name == "cry") return GateKind::CRY;
    if (name == "xx_plus_yy") return GateKind::XXplusYY;
    if (name == "rzz") return GateKind::RZZ;
    throw std::invalid_argument("unknown gate: " + name);
}

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::Phase:
        case GateKind::X: return 1;
        default: return 2;
    }
}

int gate_param_count(GateKind kind) {
    switch (kind) {
        case GateKind::X:
        case GateKind::CNOT:
        case GateKind::SWAP: return 0;
        default: return 1;
    }
}

void Circuit::add(GateKind kind, std::vector<int> qubits, std::vector<double> params) {
    if (static_cast<int>(qubits.size()) != gate_arity(kind))
        throw std::invalid_argument("circuit: wrong qubit count for gate");
    if (static_cast<int>(params.size()) != gate_param_count(kind))
        throw std::invalid_argument("circuit: wrong parameter count for gate");
    for (int q : qubits)
        if (q < 0 || q >= n) throw std::out_of_range("circuit: qubit index out of range");
    if (qubits.size() == 2 && qubits[0] == qubits[1])
        throw std::invalid_argument("circuit: duplicate qubit in gate");
    for (double p : params)
        if (!std::isfinite(p)) throw std::invalid_argument("circuit: non-finite angle");
    gates.push_back({kind, std::move(qubits), std::move(params)});
}

void Circuit::append(const Circuit& other, int qubit_offset) {
    for (const auto& g : other.gates) {
        std::vector<int> qs = g.qubits;
        for (int& q : qs) q += qubit_offset;
        add(g.kind, std::move(qs), g.params);
    }
    global_phase += other.global_phase;
}

namespace {

int depth_of(const std::vector<Gate>& gates, int n, bool two_qubit_only) {
    std::vector<int> busy(n, 0);
    int depth = 0;
    for (const auto& g : gates) {
        if (two_qubit_only && g.qubits.size() < 2) continue;
        int layer = 0;
        for (int q : g.qubits) layer = std::max(layer, busy[q]);
        ++layer;
        for (int q : g.qubits) busy[q] = layer;
        depth = std::max(depth, layer);
    }
    return depth;
}

}  // namespace

int Circuit::depth() const { return depth_of(gates, n, false); }
int Circuit::two_qubit_depth() const { return depth_of(gates, n, true); }

std::map<std::string, int> Circuit::gate_counts() const {
    std::map<std::string, int> counts;
    for (const auto& g : gates) ++counts[gate_name(g.kind)];
    return counts;
}

std::string Circuit::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["global_phase"] = global_phase;
    auto& gs = j["gates"] = nlohmann::json::array();
    for (const auto& g : gates)
        gs.push_back({{"kind", gate_name(g.kind)}, {"qubits", g.qubits}, {"params", g.params}});
    j["depth"] = depth();
    j["two_qubit_depth"] = two_qubit_depth();
    j["counts"] = gate_counts();
    return j.dump(2) + "\n";
}

Circuit Circuit::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Circuit c;
    c.n = j.at("n");
    c.global_phase = j.value("global_phase", 0.0);
    for (const auto& g : j.at("gates"))
        c.add(gate_kind_from_name(g.at("kind")), g.at("qubits").get<std::vector<int>>(),
              g.value("params", std::vector<double>{}));
    return c;
}

namespace {

using Mat2x2 = std::array<cplxv, 4>;  // row-major

void apply_1q(std::vector<cplxv>& psi, int n, int q, const Mat2x2& u) {
    const std::uint64_t bit = 1ULL << (n - 1 - q);
    const std::uint64_t dim = psi.size();
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        cplxv& a = psi[i];
        cplxv& b = psi[i | bit];
        const cplxv na = u[0] * a + u[1] * b;
        const cplxv nb = u[2] * a + u[3] * b;
        a = na;
        b = nb;
    }
}

Mat2x2 mat_rx(double t) {
    return {cplxv(std::cos(t / 2), 0), cplxv(0, -std::sin(t / 2)),
            cplxv(0, -std::sin(t / 2)), cplxv(std::cos(t / 2), 0)};
}
Mat2x2 mat_ry(double t) {
    return {cplxv(std::cos(t / 2), 0), cplxv(-std::sin(t / 2), 0),
            cplxv(std::sin(t / 2), 0), cplxv(std::cos(t / 2), 0)};
}
Mat2x2 mat_rz(double t) {
    return {std::polar(1.0, -t / 2), cplxv(0, 0), cplxv(0, 0), std::polar(1.0, t / 2)};
}

}  // namespace

std::vector<cplxv> dense_simulate(const Circuit& circuit) {
    if (circuit.n < 1 || circuit.n > 20)
        throw std::invalid_argument("dense_simulate: qubit count must be in 1..20");
    const int n = circuit.n;
    std::vector<cplxv> psi(1ULL << n, cplxv(0, 0));
    psi[0] = 1.0;
    for (const auto& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::RX: apply_1q(psi, n, g.qubits[0], mat_rx(g.params[0])); break;
            case GateKind::RY: apply_1q(psi, n, g.qubits[0], mat_ry(g.params[0])); break;
            case GateKind::RZ: apply_1q(psi, n, g.qubits[0], mat_rz(g.params[0])); break;
            case GateKind::Phase:
                apply_1q(psi, n, g.qubits[0],
                         {cplxv(1, 0), cplxv(0, 0), cplxv(0, 0), std::polar(1.0, g.params[0])});
                break;
            case GateKind::X:
                apply_1q(psi, n, g.qubits[0], {cplxv(0, 0), cplxv(1, 0), cplxv(1, 0), cplxv(0, 0)});
                break;
            case GateKind::CNOT: {
                const std::uint64_t cb = 1ULL << (n - 1 - g.qubits[0]);
                const std::uint64_t tb = 1ULL << (n - 1 - g.qubits[1]);
                for (std::uint64_t i = 0; i < psi.size(); ++i)
                    if ((i & cb) && !(i & tb)) std::swap(psi[i], psi[i | tb]);
                break;
            }
            case GateKind::SWAP: {
                const std::uint64_t a = 1ULL << (n - 1 - g.qubits[0]);
                const std::uint64_t b = 1ULL << (n - 1 - g.qubits[1]);
                for (std::uint64_t i = 0; i < psi.size(); ++i)
                    if ((i & a) && !(i & b)) std::swap(psi[i], psi[(i & ~a) | b]);
                break;
            }
            case GateKind::CRY: {
                const std::uint64_t cb = 1ULL << (n - 1 - g.qubits[0]);
                const std::uint64_t tb = 1ULL << (n - 1 - g.qubits[1]);
                const Mat2x2 u = mat_ry(g.params[0]);
                for (std::uint64_t i = 0; i < psi.size(); ++i) {
                    if (!(i & cb) || (i & tb)) continue;
                    cplxv& x = psi[i];
                    cplxv& y = psi[i | tb];
                    const cplxv nx = u[0] * x + u[1] * y;
                    const cplxv ny = u[2] * x + u[3] * y;
                    x = nx;
                    y = ny;
                }
                break;
            }
            case GateKind::XXplusYY: {
                const std::uint64_t a = 1ULL << (n - 1 - g.qubits[0]);
                const std::uint64_t b = 1ULL << (n - 1 - g.qubits[1]);
                const cplxv c(std::cos(g.params[0] / 2), 0);
                const cplxv is(0, std::sin(g.params[0] / 2));
                for (std::uint64_t i = 0; i < psi.size(); ++i) {
                    if ((i & a) || !(i & b)) continue;  // enumerate |01> slots
                    cplxv& x = psi[i];                  // |01>
                    cplxv& y = psi[(i | a) & ~b];       // |10>
                    const cplxv nx = c * x + is * y;
                    const cplxv ny = is * x + c * y;
                    x = nx;
                    y = ny;
                }
                break;
            }
            case GateKind::RZZ: {
                const std::uint64_t a = 1ULL << (n - 1 - g.qubits[0]);
                const std::uint64_t b = 1ULL << (n - 1 - g.qubits[1]);
                for (std::uint64_t i = 0; i < psi.size(); ++i) {
                    const int za = (i & a) ? -1 : 1;
                    const int zb = (i & b) ? -1 : 1;
                    psi[i] *= std::polar(1.0, -g.params[0] / 2 * za * zb);
                }
                break;
            }
        }
    }
    if (circuit.global_phase != 0.0) {
        const cplxv gp = std::polar(1.0, circuit.global_phase);
        for (auto& v : psi) v *= gp;
    }
    return psi;
}

namespace {

std::string fmt_angle(double a) {
    std::ostringstream ss;
    ss.precision(17);
    ss << a;
    return ss.str();
}

void emit_gate(std::ostringstream& os, const std::string& name, const std::vector<int>& qs,
               const std::vector<double>& ps) {
    os << name;
    if (!ps.empty()) {
        os << "(";
        for (std::size_t i = 0; i < ps.size(); ++i) os << (i ? ", " : "") << fmt_angle(ps[i]);
        os << ")";
    }
    os << " ";
    for (std::size_t i = 0; i < qs.size(); ++i) os << (i ? ", " : "") << "q[" << qs[i] << "]";
    os << ";\n";
}

constexpr double kHalfPi = std::numbers::pi / 2;

// rzz core: cx a,b ; rz(t) b ; cx a,b
void emit_rzz(std::ostringstream& os, int a, int b, double t) {
    emit_gate(os, "cx", {a, b}, {});
    emit_gate(os, "rz", {b}, {t});
    emit_gate(os, "cx", {a, b}, {});
}

}  // namespace

std::string export_qasm(const Circuit& circuit) {
    std::ostringstream os;
    os << "OPENQASM 3.0;\n";
    os << "include \"stdgates.inc\";\n";
    os << "qubit[" << circuit.n << "] q;\n";
    if (circuit.global_phase != 0.0)
        os << "gphase(" << fmt_angle(circuit.global_phase) << ");\n";
    for (const auto& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::RZZ:
                emit_rzz(os, g.qubits[0], g.qubits[1], g.params[0]);
                break;
            case GateKind::XXplusYY: {
                // U(theta) = Rxx(-theta/2) Ryy(-theta/2), each conjugated
                // from the rzz core; uses rz/ry/cx only.
                const int a = g.qubits[0], b = g.qubits[1];
                const double t = -g.params[0] / 2;
                // Ryy(t): V = Rz(pi/2) Ry(pi/2) maps Z to Y
                for (int q : {a, b}) {
                    emit_gate(os, "rz", {q}, {-kHalfPi});
                    emit_gate(os, "ry", {q}, {-kHalfPi});
                }
                emit_rzz(os, a, b, t);
                for (int q : {a, b}) {
                    emit_gate(os, "ry", {q}, {kHalfPi});
                    emit_gate(os, "rz", {q}, {kHalfPi});
                }
                // Rxx(t): U = Ry(pi/2) maps Z to X
                for (int q : {a, b}) emit_gate(os, "ry", {q}, {-kHalfPi});
                emit_rzz(os, a, b, t);
                for (int q : {a, b}) emit_gate(os, "ry", {q}, {kHalfPi});
                break;
            }
            default:
                emit_gate(os, gate_name(g.kind), g.qubits, g.params);
        }
    }
    return os.str();
}

Circuit parse_qasm(const std::string& text) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        // strip comments and whitespace
        const auto cpos = line.find("//");
        if (cpos != std::string::npos) line.resize(cpos);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (line.empty()) continue;
        if (line.rfind("OPENQASM", 0) == 0 || line.rfind("include", 0) == 0) continue;
        if (line.back() != ';')
            throw std::invalid_argument("qasm parse: missing ';' in: " + line);
        line.pop_back();

        if (line.rfind("qubit", 0) == 0) {
            const auto lb = line.find('['), rb = line.find(']');
            if (lb == std::string::npos || rb == std::string::npos)
                throw std::invalid_argument("qasm parse: bad qubit declaration");
            c.n = std::stoi(line.substr(lb + 1, rb - lb - 1));
            continue;
        }
        if (line.rfind("gphase", 0) == 0) {
            const auto lp = line.find('('), rp = line.rfind(')');
            c.global_phase += std::stod(line.substr(lp + 1, rp - lp - 1));
            continue;
        }

        std::string name = line.substr(0, line.find_first_of(" (\t"));
        std::vector<double> params;
        std::string rest = line.substr(name.size());
        if (!rest.empty() && rest.find('(') != std::string::npos) {
            const auto lp = rest.find('('), rp = rest.find(')');
            std::string plist = rest.substr(lp + 1, rp - lp - 1);
            std::istringstream ps(plist);
            std::string tok;
            while (std::getline(ps, tok, ',')) params.push_back(std::stod(tok));
            rest = rest.substr(rp + 1);
        }
        std::vector<int> qubits;
        std::size_t pos = 0;
        while ((pos = rest.find("q[", pos)) != std::string::npos) {
            const auto rb = rest.find(']', pos);
            qubits.push_back(std::stoi(rest.substr(pos + 2, rb - pos - 2)));
            pos = rb;
        }
        c.add(gate_kind_from_name(name), std::move(qubits), std::move(params));
    }
    if (c.n == 0) throw std::invalid_argument("qasm parse: no qubit declaration");
    return c;
}

}  // namespace wsxy
