#include <algorithm>
#include <cmath>
#include <vector>

#include "minkolab/errors.hpp"
#include "minkolab/measure.hpp"

namespace minkolab {

// The dual-convex distance is computed from the witness-point program:
// one support point y_i in the unit ball per atom direction u_i, with
//   maximize  sum_i s_i (u_i . y_i)
//   s.t.      u_j . y_i <= u_j . y_j   for all i != j,   |y_i| <= 1.
// Feasible (u_i . y_i)_i are exactly the support values of convex sets inside
// the unit ball: conv{y_i} realizes them. Solved by a log-barrier Newton path,
// with diminishing-step projected ascent as fallback.

namespace {

struct Program {
    std::vector<Vec> dirs;
    std::vector<double> s;
    int dim = 2;
    int m = 0;
};

double exact_objective(const Program& pr, const std::vector<Vec>& y) {
    // Value realized by the feasible body conv{y_i}.
    double total = 0.0;
    for (int j = 0; j < pr.m; ++j) {
        double h = -2.0;
        for (int i = 0; i < pr.m; ++i) h = std::max(h, pr.dirs[j].dot(y[i]));
        total += pr.s[j] * h;
    }
    return total;
}

bool feasible(const Program& pr, const std::vector<Vec>& y, double margin) {
    for (int i = 0; i < pr.m; ++i) {
        if (y[i].norm2() >= 1.0 - margin) return false;
        for (int j = 0; j < pr.m; ++j) {
            if (i == j) continue;
            if (pr.dirs[j].dot(y[j] - y[i]) <= margin) return false;
        }
    }
    return true;
}

double barrier_value(const Program& pr, const std::vector<Vec>& y, double t) {
    double val = 0.0;
    for (int i = 0; i < pr.m; ++i) val += t * pr.s[i] * pr.dirs[i].dot(y[i]);
    for (int i = 0; i < pr.m; ++i) {
        double q = 1.0 - y[i].norm2();
        if (q <= 0.0) return -HUGE_VAL;
        val += std::log(q);
        for (int j = 0; j < pr.m; ++j) {
            if (i == j) continue;
            double d = pr.dirs[j].dot(y[j] - y[i]);
            if (d <= 0.0) return -HUGE_VAL;
            val += std::log(d);
        }
    }
    return val;
}

// One centering step: Newton on the barrier objective. Returns false when the
// linear algebra breaks down.
bool newton_center(const Program& pr, std::vector<Vec>& y, double t, int max_steps) {
    const int d = pr.dim;
    const int nv = pr.m * d;
    std::vector<double> grad(nv), hess(static_cast<std::size_t>(nv) * nv), step(nv);

    for (int it = 0; it < max_steps; ++it) {
        std::fill(grad.begin(), grad.end(), 0.0);
        std::fill(hess.begin(), hess.end(), 0.0);
        auto g = [&](int i, int k) -> double& { return grad[i * d + k]; };
        auto h = [&](int i, int k, int j, int l) -> double& {
            return hess[static_cast<std::size_t>(i * d + k) * nv + (j * d + l)];
        };

        for (int i = 0; i < pr.m; ++i)
            for (int k = 0; k < d; ++k) g(i, k) += t * pr.s[i] * pr.dirs[i][k];

        for (int i = 0; i < pr.m; ++i) {
            double q = 1.0 - y[i].norm2();
            for (int k = 0; k < d; ++k) {
                g(i, k) -= 2.0 * y[i][k] / q;
                h(i, k, i, k) -= 2.0 / q;
                for (int l = 0; l < d; ++l) h(i, k, i, l) -= 4.0 * y[i][k] * y[i][l] / (q * q);
            }
            for (int j = 0; j < pr.m; ++j) {
                if (i == j) continue;
                const Vec& u = pr.dirs[j];
                double dist = u.dot(y[j] - y[i]);
                for (int k = 0; k < d; ++k) {
                    g(j, k) += u[k] / dist;
                    g(i, k) -= u[k] / dist;
                }
                double w = 1.0 / (dist * dist);
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l) {
                        double vv = w * u[k] * u[l];
                        h(j, k, j, l) -= vv;
                        h(i, k, i, l) -= vv;
                        h(j, k, i, l) += vv;
                        h(i, k, j, l) += vv;
                    }
            }
        }

        // Solve (-H) step = grad; -H is positive definite (ball barriers).
        std::vector<double> a(hess.size());
        for (std::size_t idx = 0; idx < hess.size(); ++idx) a[idx] = -hess[idx];
        step = grad;
        if (!cholesky_solve(a, step, nv)) return false;

        double decrement = 0.0;
        for (int idx = 0; idx < nv; ++idx) decrement += grad[idx] * step[idx];
        if (!(decrement == decrement)) return false;
        if (decrement < 1e-18 * (1.0 + std::abs(t))) return true;

        double base = barrier_value(pr, y, t);
        double alpha = 1.0;
        std::vector<Vec> trial(pr.m);
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (int i = 0; i < pr.m; ++i) {
                Vec dlt{step[i * d + 0], step[i * d + 1], d == 3 ? step[i * d + 2] : 0.0};
                trial[i] = y[i] + dlt * alpha;
            }
            double v = barrier_value(pr, trial, t);
            if (v > base + 0.25 * alpha * decrement) {
                y = trial;
                moved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!moved) return true;  // stalled at numerical precision
    }
    return true;
}

double solve_one_sided(const Program& pr) {
    double sscale = 0.0;
    for (double v : pr.s) sscale += std::abs(v);
    if (sscale < 1e-300) return 0.0;

    std::vector<Vec> y(pr.m);
    for (int i = 0; i < pr.m; ++i) y[i] = pr.dirs[i] * 0.5;
    if (!feasible(pr, y, 0.0)) {
        // should not happen for deduplicated directions
        return detail::dc_projected_ascent(pr.dirs, pr.s, pr.dim);
    }

    const double ncon = static_cast<double>(pr.m) * pr.m;
    double t = 1.0 / std::max(sscale, 1e-12);
    const double gap_target = 1e-11 * std::max(1.0, sscale);
    bool ok = true;
    while (ncon / t > gap_target && t < 1e18) {
        if (!newton_center(pr, y, t, 60)) {
            ok = false;
            break;
        }
        t *= 8.0;
    }
    if (!ok) {
        double fb = detail::dc_projected_ascent(pr.dirs, pr.s, pr.dim);
        return std::max(fb, exact_objective(pr, y));
    }
    return exact_objective(pr, y);
}

}  // namespace

namespace detail {

double dc_projected_ascent(const std::vector<Vec>& dirs, const std::vector<double>& signs,
                           int dim, int iterations) {
    const int m = static_cast<int>(dirs.size());
    std::vector<Vec> y(m);
    for (int i = 0; i < m; ++i) y[i] = dirs[i] * 0.5;
    double sscale = 0.0;
    for (double v : signs) sscale += std::abs(v);
    const double rho = 50.0 * std::max(sscale, 1e-12);

    for (int it = 1; it <= iterations; ++it) {
        std::vector<Vec> grad(m);
        for (int i = 0; i < m; ++i) grad[i] = dirs[i] * signs[i];
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                double viol = dirs[j].dot(y[i] - y[j]);
                if (viol > 0.0) {
                    grad[i] -= dirs[j] * (2.0 * rho * viol);
                    grad[j] += dirs[j] * (2.0 * rho * viol);
                }
            }
        double eta = 0.5 / (rho * std::sqrt(static_cast<double>(it)));
        for (int i = 0; i < m; ++i) {
            y[i] += grad[i] * eta;
            double n = y[i].norm();
            if (n > 1.0) y[i] *= 1.0 / n;
        }
    }
    Program pr{dirs, signs, dim, m};
    // project onto the feasible class through the realized body
    return exact_objective(pr, y);
}

}  // namespace detail

double dual_convex_distance(const DirectionalMeasure& mu, const DirectionalMeasure& nu) {
    if (mu.dim() != nu.dim()) throw DimensionMismatch("dual_convex_distance dims differ");
    double mm = mu.total_mass(), mn = nu.total_mass();
    if (std::abs(mm - mn) > 1e-9)
        throw MassMismatch("dual_convex_distance requires equal total masses");

    // Union of supports with signed weights s = mu - nu, canonically ordered so
    // the result is exactly symmetric in (mu, nu).
    std::vector<Vec> dirs;
    std::vector<double> s;
    auto add = [&](const Vec& u, double w) {
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            if ((dirs[i] - u).norm() <= 1e-9) {
                s[i] += w;
                return;
            }
        }
        dirs.push_back(u);
        s.push_back(w);
    };
    for (const auto& a : mu.atoms()) add(a.dir, a.weight);
    for (const auto& a : nu.atoms()) add(a.dir, -a.weight);

    std::vector<int> order(dirs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (dirs[a].x != dirs[b].x) return dirs[a].x < dirs[b].x;
        if (dirs[a].y != dirs[b].y) return dirs[a].y < dirs[b].y;
        return dirs[a].z < dirs[b].z;
    });
    Program pr;
    pr.dim = mu.dim();
    pr.m = static_cast<int>(dirs.size());
    pr.dirs.reserve(dirs.size());
    pr.s.reserve(dirs.size());
    for (int idx : order) {
        pr.dirs.push_back(dirs[idx]);
        pr.s.push_back(s[idx]);
    }

    double sscale = 0.0;
    for (double v : pr.s) sscale += std::abs(v);
    if (sscale < 1e-14) return 0.0;

    double plus = solve_one_sided(pr);
    for (double& v : pr.s) v = -v;
    double minus = solve_one_sided(pr);
    return std::max({plus, minus, 0.0});
}

}  // namespace minkolab
