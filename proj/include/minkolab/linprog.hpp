#pragma once

#include <vector>

namespace minkolab::detail {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

// maximize c.x subject to rows, x >= 0.
// Relation codes per row: -1 for <=, 0 for ==, +1 for >=.
struct LpProblem {
    int nvars = 0;
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    std::vector<int> rel;
    std::vector<double> objective;
};

struct LpSolution {
    LpStatus status = LpStatus::IterationLimit;
    double value = 0.0;
    std::vector<double> x;
};

// Dense two-phase tableau simplex with Bland's rule. Meant for the small
// problems in this project (Chebyshev centers, recession tests, transport).
LpSolution simplex_solve(const LpProblem& lp, int max_iterations = 200000);

}  // namespace minkolab::detail
