#include "minkolab/measure.hpp"

#include <algorithm>
#include <cmath>

#include "minkolab/errors.hpp"

namespace minkolab {

namespace {
constexpr double kDirMergeTol = 1e-9;  // chordal, ~= angular at this scale
}

DirectionalMeasure::DirectionalMeasure(int dim, std::vector<Atom> atoms) : dim_(dim) {
    if (dim != 2 && dim != 3) throw DimensionMismatch("measure dimension must be 2 or 3");
    if (atoms.empty()) throw InvalidMeasure("measure needs at least one atom");
    for (auto& a : atoms) {
        if (dim == 2 && a.dir.z != 0.0) throw InvalidMeasure("2D atom with nonzero z component");
        double n = a.dir.norm();
        if (std::abs(n - 1.0) > 1e-12) throw InvalidMeasure("atom direction is not unit length");
        if (!(a.weight > 0.0)) throw InvalidMeasure("atom weight must be strictly positive");
        a.dir = a.dir.normalized();
    }
    atoms_.reserve(atoms.size());
    for (const auto& a : atoms) {
        bool merged = false;
        for (auto& b : atoms_) {
            if ((a.dir - b.dir).norm() <= kDirMergeTol) {
                // weighted-average direction keeps the merged atom unit length
                Vec mix = b.dir * b.weight + a.dir * a.weight;
                b.dir = mix.normalized();
                b.weight += a.weight;
                merged = true;
                break;
            }
        }
        if (!merged) atoms_.push_back(a);
    }
    mass_ = 0.0;
    for (const auto& a : atoms_) mass_ += a.weight;
}

Vec barycenter(const DirectionalMeasure& mu) {
    Vec b;
    for (const auto& a : mu.atoms()) b += a.dir * a.weight;
    return b;
}

namespace {

double eval_theta(const DirectionalMeasure& mu, const Vec& th) {
    double s = 0.0;
    for (const auto& a : mu.atoms()) s += a.weight * std::abs(th.dot(a.dir));
    return s;
}

double eval_theta_plus(const DirectionalMeasure& mu, const Vec& th) {
    double s = 0.0;
    for (const auto& a : mu.atoms()) s += a.weight * std::max(0.0, th.dot(a.dir));
    return s;
}

// n=2 exact minimization of sum w_i |cos(phi - alpha_i)| (or its positive
// part). On each interval between breakpoints the objective is a single
// sinusoid A cos(phi) + B sin(phi); candidates are the breakpoints plus any
// interior stationary point.
struct Min2D {
    double value;
    double angle;
};

Min2D minimize_circle(const DirectionalMeasure& mu, bool positive_part) {
    std::vector<double> alphas;
    alphas.reserve(mu.size());
    for (const auto& a : mu.atoms()) alphas.push_back(std::atan2(a.dir.y, a.dir.x));

    const double period = positive_part ? 2.0 * M_PI : M_PI;
    std::vector<double> breaks;
    for (double al : alphas) {
        double b1 = std::fmod(al + M_PI_2, period);
        double b2 = std::fmod(al - M_PI_2, period);
        if (b1 < 0) b1 += period;
        if (b2 < 0) b2 += period;
        breaks.push_back(b1);
        breaks.push_back(b2);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                 breaks.end());
    if (breaks.empty()) breaks.push_back(0.0);

    auto eval = [&](double phi) {
        Vec th{std::cos(phi), std::sin(phi), 0.0};
        return positive_part ? eval_theta_plus(mu, th) : eval_theta(mu, th);
    };

    std::vector<double> candidates = breaks;
    const std::size_t nb = breaks.size();
    for (std::size_t k = 0; k < nb; ++k) {
        double lo = breaks[k];
        double hi = (k + 1 < nb) ? breaks[k + 1] : breaks[0] + period;
        double mid = 0.5 * (lo + hi);
        double ca = 0.0, sa = 0.0;
        std::size_t i = 0;
        for (const auto& a : mu.atoms()) {
            double c = std::cos(mid - alphas[i]);
            double sign = positive_part ? (c > 0.0 ? 1.0 : 0.0) : (c >= 0.0 ? 1.0 : -1.0);
            ca += a.weight * sign * std::cos(alphas[i]);
            sa += a.weight * sign * std::sin(alphas[i]);
            ++i;
        }
        // interior minimizer of ca*cos(phi) + sa*sin(phi)
        double st = std::atan2(-sa, -ca);
        for (double cand : {st, st + period}) {
            if (cand > lo + 1e-14 && cand < hi - 1e-14) candidates.push_back(cand);
        }
    }

    Min2D best{eval(candidates[0]), candidates[0]};
    for (double c : candidates) {
        double v = eval(c);
        if (v < best.value) best = {v, c};
    }
    return best;
}

// n=3: grid scan with derivative-free polish in the tangent plane.
struct Min3D {
    double value;
    Vec dir;
};

Min3D minimize_sphere(const DirectionalMeasure& mu, bool positive_part, int grid_nodes) {
    auto eval = [&](const Vec& th) {
        return positive_part ? eval_theta_plus(mu, th) : eval_theta(mu, th);
    };
    std::vector<Vec> grid = fibonacci_sphere(std::max(grid_nodes, 4096));
    std::vector<std::pair<double, int>> scored(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) scored[i] = {eval(grid[i]), static_cast<int>(i)};
    std::partial_sort(scored.begin(), scored.begin() + std::min<std::size_t>(6, scored.size()),
                      scored.end());

    Min3D best{scored[0].first, grid[scored[0].second]};
    int starts = static_cast<int>(std::min<std::size_t>(6, scored.size()));
    for (int s = 0; s < starts; ++s) {
        Vec th = grid[scored[s].second];
        double val = scored[s].first;
        // tangent basis
        Vec a = std::abs(th.z) < 0.9 ? Vec{0, 0, 1} : Vec{1, 0, 0};
        Vec t1 = th.cross(a).normalized();
        Vec t2 = th.cross(t1).normalized();
        double step = 2.5 / std::sqrt(static_cast<double>(grid.size()));
        while (step > 1e-10) {
            bool improved = false;
            for (int k = 0; k < 8; ++k) {
                double ang = k * M_PI / 4.0;
                Vec cand = (th + (t1 * std::cos(ang) + t2 * std::sin(ang)) * step).normalized();
                double v = eval(cand);
                if (v < val) {
                    val = v;
                    th = cand;
                    improved = true;
                }
            }
            if (!improved) {
                step *= 0.5;
            } else {
                t1 = th.cross(std::abs(th.z) < 0.9 ? Vec{0, 0, 1} : Vec{1, 0, 0}).normalized();
                t2 = th.cross(t1).normalized();
            }
        }
        if (val < best.value) best = {val, th};
    }
    return best;
}

}  // namespace

DispersionReport dispersion(const DirectionalMeasure& mu, int grid_nodes) {
    DispersionReport rep;
    if (mu.dim() == 2) {
        Min2D t = minimize_circle(mu, false);
        Min2D tp = minimize_circle(mu, true);
        rep.theta = t.value;
        rep.theta_plus = tp.value;
        rep.argmin_direction = {std::cos(t.angle), std::sin(t.angle), 0.0};
        rep.bracket_width = 0.0;
    } else {
        Min3D t = minimize_sphere(mu, false, grid_nodes);
        Min3D tp = minimize_sphere(mu, true, grid_nodes);
        rep.theta = t.value;
        rep.theta_plus = tp.value;
        rep.argmin_direction = t.dir;
        // conservative covering radius of the Fibonacci grid
        rep.bracket_width =
            mu.total_mass() * 3.0 / std::sqrt(static_cast<double>(std::max(grid_nodes, 4096)));
    }
    return rep;
}

double theta(const DirectionalMeasure& mu, int grid_nodes) {
    return dispersion(mu, grid_nodes).theta;
}

double theta_plus(const DirectionalMeasure& mu, int grid_nodes) {
    return dispersion(mu, grid_nodes).theta_plus;
}

DispersionReport mass_bound_check(const DirectionalMeasure& mu, int grid_nodes) {
    DispersionReport rep = dispersion(mu, grid_nodes);
    double mass = mu.total_mass();
    if (rep.theta <= 1e-12 * std::max(1.0, mass))
        throw DegenerateMeasure("theta vanishes, mass bound undefined");
    double delta = std::min(rep.theta / (2.0 * mass), rep.theta / 2.0);
    rep.mass_bound_delta = delta;

    auto omega_mass = [&](const Vec& th) {
        double s = 0.0;
        for (const auto& a : mu.atoms())
            if (std::abs(th.dot(a.dir)) > delta) s += a.weight;
        return s;
    };

    double worst = mass;
    if (mu.dim() == 2) {
        for (int i = 0; i < 720; ++i) {
            double phi = M_PI * i / 720.0;
            worst = std::min(worst, omega_mass({std::cos(phi), std::sin(phi), 0.0}));
        }
        for (const auto& a : mu.atoms()) {
            worst = std::min(worst, omega_mass(a.dir.perp2()));
            worst = std::min(worst, omega_mass(a.dir));
        }
    } else {
        for (const Vec& g : fibonacci_sphere(std::max(grid_nodes, 4096)))
            worst = std::min(worst, omega_mass(g));
    }
    rep.mass_bound_holds = worst > delta;
    return rep;
}

DirectionalMeasure scaled(const DirectionalMeasure& mu, double factor) {
    if (!(factor > 0.0)) throw InvalidMeasure("scale factor must be positive");
    std::vector<Atom> atoms = mu.atoms();
    for (auto& a : atoms) a.weight *= factor;
    return {mu.dim(), std::move(atoms)};
}

DirectionalMeasure normalized(const DirectionalMeasure& mu) {
    return scaled(mu, 1.0 / mu.total_mass());
}

DirectionalMeasure recentered(const DirectionalMeasure& mu, double tol, int max_rounds) {
    std::vector<Atom> atoms = mu.atoms();
    const int n = mu.dim();
    for (int round = 0; round < max_rounds; ++round) {
        Vec b;
        double mass = 0.0;
        for (const auto& a : atoms) {
            b += a.dir * a.weight;
            mass += a.weight;
        }
        if (b.norm() <= tol * std::max(1.0, mass)) break;
        // Solve (sum_i w_i (I - u_i u_i^T)) c = b, then shift each direction by
        // its tangential component of -c.
        double m[9] = {0, 0, 0, 0, 0, 0, 0, 0, 0};
        for (const auto& a : atoms) {
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    double p = (r == c ? 1.0 : 0.0) - a.dir[r] * a.dir[c];
                    m[r * 3 + c] += a.weight * p;
                }
        }
        double sol[3] = {0, 0, 0};
        bool ok;
        if (n == 2) {
            double m2[4] = {m[0], m[1], m[3], m[4]};
            double rhs[2] = {b.x, b.y};
            double out[2];
            ok = solve2x2(m2, rhs, out);
            sol[0] = out[0];
            sol[1] = out[1];
        } else {
            double rhs[3] = {b.x, b.y, b.z};
            ok = solve3x3(m, rhs, sol);
        }
        if (!ok) throw DegenerateMeasure("barycenter repair singular (atoms on a line)");
        Vec c{sol[0], sol[1], sol[2]};
        for (auto& a : atoms) {
            Vec tangential = c - a.dir * a.dir.dot(c);
            a.dir = (a.dir - tangential).normalized();
        }
    }
    return {mu.dim(), std::move(atoms)};
}

}  // namespace minkolab
