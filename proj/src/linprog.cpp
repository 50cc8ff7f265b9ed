#include "minkolab/linprog.hpp"

#include <cmath>
#include <cstdlib>

namespace minkolab::detail {

namespace {
constexpr double kEps = 1e-9;

struct Tableau {
    int nrows = 0, ncols = 0;  // ncols excludes rhs column
    std::vector<double> t;     // (nrows+1) x (ncols+1), last row = objective, last col = rhs
    std::vector<int> basis;

    double& at(int r, int c) { return t[static_cast<std::size_t>(r) * (ncols + 1) + c]; }
    double at(int r, int c) const { return t[static_cast<std::size_t>(r) * (ncols + 1) + c]; }

    void pivot(int pr, int pc) {
        double p = at(pr, pc);
        for (int c = 0; c <= ncols; ++c) at(pr, c) /= p;
        for (int r = 0; r <= nrows; ++r) {
            if (r == pr) continue;
            double f = at(r, pc);
            if (f == 0.0) continue;
            for (int c = 0; c <= ncols; ++c) at(r, c) -= f * at(pr, c);
        }
        basis[pr] = pc;
    }

    // Bland's rule: smallest-index entering column with negative reduced cost,
    // smallest-basis-index tie break on the ratio test.
    LpStatus run(int max_iterations, const std::vector<bool>& allowed) {
        for (int it = 0; it < max_iterations; ++it) {
            int pc = -1;
            for (int c = 0; c < ncols; ++c) {
                if (!allowed[c]) continue;
                if (at(nrows, c) < -kEps) {
                    pc = c;
                    break;
                }
            }
            if (pc < 0) return LpStatus::Optimal;
            int pr = -1;
            double best = 0.0;
            for (int r = 0; r < nrows; ++r) {
                double a = at(r, pc);
                if (a > kEps) {
                    double ratio = at(r, ncols) / a;
                    if (pr < 0 || ratio < best - 1e-12 ||
                        (ratio < best + 1e-12 && basis[r] < basis[pr])) {
                        pr = r;
                        best = ratio;
                    }
                }
            }
            if (pr < 0) return LpStatus::Unbounded;
            pivot(pr, pc);
        }
        return LpStatus::IterationLimit;
    }
};
}  // namespace

LpSolution simplex_solve(const LpProblem& lp, int max_iterations) {
    const int m = static_cast<int>(lp.rows.size());
    const int n = lp.nvars;

    // Column layout: structural | slack/surplus | artificial.
    std::vector<double> rhs = lp.rhs;
    std::vector<int> rel = lp.rel;
    std::vector<std::vector<double>> rows = lp.rows;
    for (int r = 0; r < m; ++r) {
        if (rhs[r] < 0.0) {
            rhs[r] = -rhs[r];
            rel[r] = -rel[r];
            for (double& v : rows[r]) v = -v;
        }
    }
    int nslack = 0;
    for (int r = 0; r < m; ++r)
        if (rel[r] != 0) ++nslack;
    int nart = 0;
    for (int r = 0; r < m; ++r)
        if (rel[r] != -1) ++nart;

    Tableau tab;
    tab.nrows = m;
    tab.ncols = n + nslack + nart;
    tab.t.assign(static_cast<std::size_t>(m + 1) * (tab.ncols + 1), 0.0);
    tab.basis.assign(m, -1);

    int scol = n, acol = n + nslack;
    std::vector<int> art_cols;
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) tab.at(r, c) = rows[r][c];
        tab.at(r, tab.ncols) = rhs[r];
        if (rel[r] == -1) {
            tab.at(r, scol) = 1.0;
            tab.basis[r] = scol++;
        } else if (rel[r] == 1) {
            tab.at(r, scol++) = -1.0;
            tab.at(r, acol) = 1.0;
            tab.basis[r] = acol;
            art_cols.push_back(acol++);
        } else {
            tab.at(r, acol) = 1.0;
            tab.basis[r] = acol;
            art_cols.push_back(acol++);
        }
    }

    LpSolution sol;
    std::vector<bool> allowed(tab.ncols, true);

    if (nart > 0) {
        // Phase 1: minimize the artificial sum.
        for (int c : art_cols) tab.at(m, c) = 1.0;
        for (int r = 0; r < m; ++r) {
            if (tab.basis[r] >= n + nslack) {
                for (int c = 0; c <= tab.ncols; ++c) tab.at(m, c) -= tab.at(r, c);
            }
        }
        LpStatus st = tab.run(max_iterations, allowed);
        if (st == LpStatus::IterationLimit) {
            sol.status = st;
            return sol;
        }
        if (tab.at(m, tab.ncols) < -1e-7) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // Drive leftover artificials out of the basis where possible.
        for (int r = 0; r < m; ++r) {
            if (tab.basis[r] >= n + nslack) {
                int pc = -1;
                for (int c = 0; c < n + nslack; ++c) {
                    if (std::abs(tab.at(r, c)) > kEps) {
                        pc = c;
                        break;
                    }
                }
                if (pc >= 0) tab.pivot(r, pc);
            }
        }
        for (int c : art_cols) allowed[c] = false;
        for (int c = 0; c <= tab.ncols; ++c) tab.at(m, c) = 0.0;
    }

    // Phase 2 objective (tableau minimizes, so negate the maximization).
    for (int c = 0; c < n; ++c) tab.at(m, c) = -lp.objective[c];
    for (int r = 0; r < m; ++r) {
        int b = tab.basis[r];
        if (b < n && lp.objective[b] != 0.0) {
            double f = -lp.objective[b];
            for (int c = 0; c <= tab.ncols; ++c) tab.at(m, c) -= f * tab.at(r, c);
        }
    }
    LpStatus st = tab.run(max_iterations, allowed);
    sol.status = st;
    if (st != LpStatus::Optimal) return sol;

    sol.x.assign(n, 0.0);
    for (int r = 0; r < m; ++r) {
        if (tab.basis[r] < n) sol.x[tab.basis[r]] = tab.at(r, tab.ncols);
    }
    double v = 0.0;
    for (int c = 0; c < n; ++c) v += lp.objective[c] * sol.x[c];
    sol.value = v;
    return sol;
}

}  // namespace minkolab::detail
