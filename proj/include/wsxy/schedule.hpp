#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace wsxy {

// Four-parameter linear annealing-style schedule:
//   beta_i  = beta0  - i * dbeta  / p
//   gamma_i = gamma0 + i * dgamma / p      for i = 0 .. p-1.
// At p = 1 only (beta0, gamma0) act.
struct LinearSchedule {
    double beta0 = 0.0;
    double dbeta = 0.0;
    double gamma0 = 0.0;
    double dgamma = 0.0;
    int p = 1;

    std::vector<std::pair<double, double>> expand() const {
        if (p < 1) throw std::invalid_argument("schedule: p must be >= 1");
        std::vector<std::pair<double, double>> out;
        out.reserve(p);
        for (int i = 0; i < p; ++i)
            out.emplace_back(beta0 - i * dbeta / p, gamma0 + i * dgamma / p);
        return out;
    }
};

inline std::vector<std::pair<double, double>> schedule_expand(const LinearSchedule& s) {
    return s.expand();
}

}  // namespace wsxy
