#include <cmath>
#include <vector>

#include "minkolab/errors.hpp"
#include "minkolab/linprog.hpp"
#include "minkolab/measure.hpp"

namespace minkolab {

// Exact W1 via the transportation linear program on the atom bipartite graph,
// chordal ground cost |u - v|.
double wasserstein1(const DirectionalMeasure& mu, const DirectionalMeasure& nu) {
    if (mu.dim() != nu.dim()) throw DimensionMismatch("wasserstein1 dims differ");
    const double mm = mu.total_mass(), mn = nu.total_mass();
    if (std::abs(mm - mn) > 1e-9) throw MassMismatch("wasserstein1 requires equal total masses");

    const int m = static_cast<int>(mu.size());
    const int k = static_cast<int>(nu.size());
    const double rescale = mm / mn;  // absorb the allowed 1e-9 slack

    detail::LpProblem lp;
    lp.nvars = m * k;
    lp.objective.assign(lp.nvars, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < k; ++j)
            lp.objective[i * k + j] = -(mu.atoms()[i].dir - nu.atoms()[j].dir).norm();

    lp.rows.reserve(m + k);
    for (int i = 0; i < m; ++i) {
        std::vector<double> row(lp.nvars, 0.0);
        for (int j = 0; j < k; ++j) row[i * k + j] = 1.0;
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(mu.atoms()[i].weight);
        lp.rel.push_back(0);
    }
    for (int j = 0; j < k; ++j) {
        std::vector<double> row(lp.nvars, 0.0);
        for (int i = 0; i < m; ++i) row[i * k + j] = 1.0;
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(nu.atoms()[j].weight * rescale);
        lp.rel.push_back(0);
    }

    detail::LpSolution sol = detail::simplex_solve(lp);
    if (sol.status != detail::LpStatus::Optimal)
        throw MassMismatch("transportation program infeasible");
    double v = -sol.value;
    return v <= 0.0 ? 0.0 : v;
}

}  // namespace minkolab
