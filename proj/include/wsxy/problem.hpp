#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wsxy/layout.hpp"
#include "wsxy/state.hpp"

namespace wsxy {

// Quadratic pseudo-boolean objective over the free variables.
// Quadratic keys are canonicalised to u < v; duplicate keys accumulate.
class QuadraticObjective {
public:
    void add_constant(double c) { constant_ += c; }
    void add_linear(int v, double w);
    void add_quadratic(int u, int v, double w);

    double constant() const { return constant_; }
    const std::map<int, double>& linear() const { return linear_; }
    const std::map<std::pair<int, int>, double>& quadratic() const { return quadratic_; }

private:
    double constant_ = 0.0;
    std::map<int, double> linear_;
    std::map<std::pair<int, int>, double> quadratic_;
};

// A one-hot-constrained optimisation instance: objective over the free
// variables, the block structure, and any variables eliminated by fixing
// (their interactions already folded into the objective).
struct OneHotProblem {
    QuadraticObjective objective;
    BlockLayout layout;
    std::vector<std::pair<int, std::uint8_t>> fixed;  // (variable id, value)
    std::vector<std::string> labels;                  // per variable id, optional

    std::string family;        // "mkc", "tsp", "hardware", ...
    std::string provenance;    // generator parameters as a JSON text blob

    double evaluate_bits(const std::vector<std::uint8_t>& bits) const;
};

double evaluate_bitstring(const OneHotProblem& problem, const std::vector<std::uint8_t>& bits);

// Energies over all feasible states; e_opt and the argmin set use an
// absolute tolerance of 1e-9 to absorb float summation noise.
// Throws when the subspace dimension exceeds the cap (default 2^26).
CostDiagonal build_cost_diagonal(const OneHotProblem& problem,
                                 std::uint64_t dim_cap = (1ULL << 26));

struct BruteForceResult {
    double e_opt = 0.0;
    std::vector<std::uint64_t> optima;
};

// Exhaustive scan of the feasible subspace, evaluating each bitstring
// directly (independent of the diagonal fast path).
BruteForceResult brute_force_optimum(const OneHotProblem& problem,
                                     std::uint64_t dim_cap = (1ULL << 26));

}  // namespace wsxy
