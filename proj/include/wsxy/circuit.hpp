#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wsxy {

using cplxv = std::complex<double>;

enum class GateKind { RX, RY, RZ, Phase, X, CNOT, SWAP, CRY, XXplusYY, RZZ };

const char* gate_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);
int gate_arity(GateKind kind);
int gate_param_count(GateKind kind);

struct Gate {
    GateKind kind;
    std::vector<int> qubits;
    std::vector<double> params;
};

// Gate list on n qubits. Qubit 0 is the leftmost bit of printed bitstrings
// (the most significant bit of dense statevector indices). XXplusYY(theta)
// acts as the identity on {|00>, |11>} and as
//   [[cos(theta/2), i sin(theta/2)], [i sin(theta/2), cos(theta/2)]]
// on {|01>, |10>}. global_phase multiplies the final state by exp(i * that).
struct Circuit {
    int n = 0;
    std::vector<Gate> gates;
    double global_phase = 0.0;

    void add(GateKind kind, std::vector<int> qubits, std::vector<double> params = {});
    void append(const Circuit& other, int qubit_offset = 0);

    int depth() const;
    int two_qubit_depth() const;
    std::map<std::string, int> gate_counts() const;

    std::string to_json() const;
    static Circuit from_json(const std::string& text);
};

// Exact dense statevector of the circuit applied to |0...0>; n <= 20.
std::vector<cplxv> dense_simulate(const Circuit& circuit);

// OpenQASM 3 text. RZZ and XXplusYY are expanded into {rz, ry, cx}; all other
// kinds map to stdgates directly. The emitted subset round-trips through
// parse_qasm.
std::string export_qasm(const Circuit& circuit);
Circuit parse_qasm(const std::string& text);

}  // namespace wsxy
