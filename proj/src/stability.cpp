#include "minkolab/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "minkolab/errors.hpp"

namespace minkolab {

DeficitReport deficits(const Polytope& e, const Polytope& f, double exponent) {
    if (e.dim() != f.dim()) throw DimensionMismatch("deficits dims differ");
    const int n = e.dim();
    DeficitReport rep;
    rep.p = exponent;

    Polytope mid = minkowski_sum(e.scaled(0.5), f.scaled(0.5));
    double ve = e.volume(), vf = f.volume();
    double avg_root = 0.5 * (std::pow(ve, 1.0 / n) + std::pow(vf, 1.0 / n));
    rep.delta_bm = std::pow(mid.volume(), 1.0 / n) / avg_root - 1.0;

    double vp = mixed_volume(e, f, exponent);
    rep.delta_iso_p =
        vp / (std::pow(vf, exponent / n) * std::pow(ve, (n - exponent) / n)) - 1.0;

    rep.alpha = fraenkel_asymmetry(e, f);
    rep.sigma = std::max(ve / vf, vf / ve);
    rep.ratio_bm = rep.alpha * rep.alpha / (std::pow(rep.sigma, 1.0 / n) * rep.delta_bm);
    rep.ratio_iso = rep.alpha * rep.alpha / rep.delta_iso_p;

    double v1 = exponent == 1.0 ? vp : mixed_volume(e, f, 1.0);
    double diskant_gap = v1 - std::pow(ve, (n - 1.0) / n) * std::pow(vf, 1.0 / n);
    double dh = hausdorff(e, f);
    rep.hausdorff_gap_ratio = std::pow(dh, n) / diskant_gap;

    if (exponent > 1.0) {
        double gap = 0.0;
        Polytope lp_mid = lp_combination(0.5, e, 0.5, f, exponent, &gap);
        rep.lp_midpoint_deficit = std::pow(lp_mid.volume(), exponent / n) -
                                  0.5 * (std::pow(ve, exponent / n) + std::pow(vf, exponent / n));
        rep.lp_midpoint_gap = gap;
    } else {
        rep.lp_midpoint_deficit = std::pow(mid.volume(), 1.0 / n) - avg_root;
        rep.lp_midpoint_gap = 0.0;
    }
    return rep;
}

RadiusBoundReport radius_bounds(const Polytope& body, double exponent) {
    const int n = body.dim();
    RadiusBoundReport rep;
    rep.p = exponent;
    RadiiResult rr = radii(body);
    rep.r = rr.inradius;
    rep.R = rr.circumradius;

    DirectionalMeasure sm = surface_measure(body, exponent);
    rep.perimeter = sm.total_mass();
    rep.theta_s = theta(sm);

    if (exponent == 1.0) {
        // closed-form dimensional constants
        double e = (n - 2.0) / (n - 1.0);
        double base = std::pow(static_cast<double>(n), std::pow(static_cast<double>(n), e));
        rep.c_lower = 1.0 / (2.0 * base);
        rep.c_upper = 0.5 * n * base;
        rep.exp_lower = e;  // exponent on S(K) below, on Theta above
        rep.exp_upper = e;
        rep.explicit_constants = true;
        double lower = rep.c_lower * rep.theta_s / std::pow(rep.perimeter, e);
        double upper = rep.c_upper * rep.perimeter / std::pow(rep.theta_s, e);
        rep.slack_lower = rep.r - lower;
        rep.slack_upper = upper - rep.R;
        rep.lower_ok = rep.slack_lower >= -1e-9;
        rep.upper_ok = rep.slack_upper >= -1e-9;
        rep.empirical_c_lower = rep.r * std::pow(rep.perimeter, e) / rep.theta_s;
        rep.empirical_c_upper = rep.R * std::pow(rep.theta_s, e) / rep.perimeter;
        return rep;
    }

    if (std::abs(exponent - n) <= 1e-9) throw ExcludedExponent("p = n has no radius bounds");
    if (std::abs(rep.perimeter - 1.0) > 1e-9)
        throw NormalizationRequired("L_p surface mass must be normalized to 1");

    const double p = exponent;
    if (p < n) {
        rep.exp_lower = (n - 1.0) * n * p / ((p - 1.0) * (n - p));
        rep.exp_upper = p / (p - 1.0);
        rep.c_lower = 1.0;
        rep.c_upper = 1.0;
        rep.explicit_constants = false;
    } else {
        rep.exp_lower = p * (n - 1.0) / (p - n);
        rep.exp_upper = p / (p - n);
        rep.c_lower = 1.0;
        // explicit constant from the hemisphere argument with delta = Theta/2
        double sigma_sphere = n == 2 ? 2.0 * M_PI : 4.0 * M_PI;
        rep.c_upper = std::pow(sigma_sphere, 1.0 / (p - n)) * std::pow(2.0, p / (p - n));
        rep.explicit_constants = false;
    }
    double lower = rep.c_lower * std::pow(rep.theta_s, rep.exp_lower);
    double upper = rep.c_upper * std::pow(rep.theta_s, -rep.exp_upper);
    rep.slack_lower = rep.r - lower;
    rep.slack_upper = upper - rep.R;
    rep.lower_ok = rep.slack_lower >= -1e-9;
    rep.upper_ok = rep.slack_upper >= -1e-9;
    rep.empirical_c_lower = rep.r / std::pow(rep.theta_s, rep.exp_lower);
    rep.empirical_c_upper = rep.R * std::pow(rep.theta_s, rep.exp_upper) / rep.c_upper;
    return rep;
}

namespace {

DirectionalMeasure perturb_measure(const DirectionalMeasure& base, double epsilon,
                                   std::uint64_t seed, bool jitter, bool recenter_p1) {
    Rng rng(seed);
    std::vector<Atom> atoms = base.atoms();
    for (auto& a : atoms) a.weight *= 1.0 + rng.uniform(-epsilon, epsilon);
    if (jitter) {
        for (auto& a : atoms) {
            Vec t = rng.unit_vector(base.dim());
            Vec tangential = t - a.dir * a.dir.dot(t);
            a.dir = (a.dir + tangential * rng.uniform(-epsilon, epsilon)).normalized();
        }
    }
    DirectionalMeasure nu(base.dim(), std::move(atoms));
    if (recenter_p1) nu = recentered(nu);
    return normalized(nu);
}

SweepRecord make_record(const DirectionalMeasure& mu0, const SolveReport& base_solve,
                        const DirectionalMeasure& nu, const SweepOptions& opts, double epsilon,
                        long seed_index) {
    const int n = mu0.dim();
    SweepRecord rec;
    rec.epsilon = epsilon;
    rec.seed = seed_index;

    DispersionReport disp = dispersion(nu);
    rec.theta = disp.theta;
    rec.theta_plus = disp.theta_plus;
    double gate = opts.p == 1.0 ? disp.theta : disp.theta_plus;
    if (gate < opts.vartheta) {
        rec.included = false;
        return rec;
    }

    SolveOptions sopts;
    sopts.tolerance = opts.solver_tolerance;
    sopts.max_iterations = opts.solver_max_iterations;
    SolveReport sol = opts.p == 1.0 ? solve_minkowski(nu, sopts)
                                    : solve_minkowski_lp(nu, opts.p, sopts);
    if (!sol.converged) throw NoConvergence(sol.failure);

    rec.dc = dual_convex_distance(mu0, nu);
    rec.w1 = wasserstein1(mu0, nu);
    rec.alpha = fraenkel_asymmetry(base_solve.body, sol.body);
    rec.hausdorff = minkolab::hausdorff(base_solve.body, sol.body);
    rec.main_ratio = rec.dc < 1e-15
                         ? 0.0
                         : rec.alpha * rec.alpha / std::pow(rec.dc, 1.0 + 1.0 / n);

    if (opts.p == 1.0) {
        Polytope mid = minkowski_sum(base_solve.body.scaled(0.5), sol.body.scaled(0.5));
        rec.midpoint_gap = std::pow(mid.volume(), 1.0 / n) -
                           0.5 * (std::pow(base_solve.body.volume(), 1.0 / n) +
                                  std::pow(sol.body.volume(), 1.0 / n));
    } else {
        Polytope mid = lp_combination(0.5, base_solve.body, 0.5, sol.body, opts.p);
        rec.midpoint_gap = std::pow(mid.volume(), opts.p / n) -
                           0.5 * (std::pow(base_solve.body.volume(), opts.p / n) +
                                  std::pow(sol.body.volume(), opts.p / n));
    }
    return rec;
}

}  // namespace

std::vector<SweepRecord> stability_sweep(const DirectionalMeasure& base, const SweepOptions& opts,
                                         std::vector<std::string>* failures) {
    DirectionalMeasure mu0 = normalized(base);
    SolveOptions sopts;
    sopts.tolerance = opts.solver_tolerance;
    sopts.max_iterations = opts.solver_max_iterations;
    SolveReport base_solve = opts.p == 1.0 ? solve_minkowski(mu0, sopts)
                                           : solve_minkowski_lp(mu0, opts.p, sopts);
    if (!base_solve.converged) throw NoConvergence("base measure: " + base_solve.failure);

    const int per_eps = opts.seeds_per_eps;
    const std::size_t total = opts.epsilons.size() * static_cast<std::size_t>(per_eps);
    std::vector<SweepRecord> records(total);
    std::vector<char> ok(total, 0);
    std::vector<std::string> errs(total);

    auto work = [&](std::size_t idx) {
        std::size_t ei = idx / per_eps;
        long si = static_cast<long>(idx % per_eps);
        double eps = opts.epsilons[ei];
        try {
            std::uint64_t seed = mix_seed(opts.master_seed, ei, static_cast<std::uint64_t>(si));
            DirectionalMeasure nu = perturb_measure(mu0, eps, seed, opts.direction_jitter,
                                                    opts.p == 1.0);
            records[idx] = make_record(mu0, base_solve, nu, opts, eps, si);
            ok[idx] = 1;
        } catch (const std::exception& ex) {
            errs[idx] = ex.what();
        }
    };

    int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < total; ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < total; i = next++) work(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<SweepRecord> out;
    out.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        if (ok[i]) {
            out.push_back(records[i]);
        } else if (failures) {
            failures->push_back("record " + std::to_string(i) + ": " + errs[i]);
        }
    }
    return out;
}

std::vector<SweepRecord> degeneracy_sweep(const std::vector<double>& aspect_ratios, double epsilon,
                                          std::uint64_t seed) {
    // same relative noise pattern for every aspect ratio
    Rng rng(mix_seed(seed, 0, 0));
    double noise[6];
    for (double& v : noise) v = rng.uniform(-epsilon, epsilon);

    std::vector<SweepRecord> out;
    out.reserve(aspect_ratios.size());
    long index = 0;
    for (double a : aspect_ratios) {
        double half = std::sqrt(3.0) / (2.0 * a);
        Polytope hex = polygon_from_vertices({{1.0, 0.0},
                                              {0.5, half},
                                              {-0.5, half},
                                              {-1.0, 0.0},
                                              {-0.5, -half},
                                              {0.5, -half}});
        DirectionalMeasure mu0 = normalized(surface_measure(hex, 1.0));

        std::vector<Atom> atoms = mu0.atoms();
        for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i].weight *= 1.0 + noise[i % 6];
        DirectionalMeasure nu = normalized(recentered({2, std::move(atoms)}));

        SolveOptions sopts;
        sopts.max_iterations = 5000;
        SolveReport se = solve_minkowski(mu0, sopts);
        SolveReport sn = solve_minkowski(nu, sopts);
        if (!se.converged || !sn.converged)
            throw NoConvergence("degeneracy sweep solve failed at aspect " + std::to_string(a));

        SweepRecord rec;
        rec.epsilon = a;  // the experiment parameter is the aspect ratio
        rec.seed = index++;
        DispersionReport disp = dispersion(mu0);
        rec.theta = disp.theta;
        rec.theta_plus = disp.theta_plus;
        rec.dc = dual_convex_distance(mu0, nu);
        rec.w1 = wasserstein1(mu0, nu);
        rec.alpha = fraenkel_asymmetry(se.body, sn.body);
        rec.hausdorff = hausdorff(se.body, sn.body);
        rec.main_ratio =
            rec.dc < 1e-15 ? 0.0 : rec.alpha * rec.alpha / std::pow(rec.dc, 1.0 + 1.0 / 2.0);
        out.push_back(rec);
    }
    return out;
}

FitResult exponent_fit(const std::vector<SweepRecord>& records) {
    std::map<double, std::vector<std::pair<double, double>>> groups;
    int usable = 0;
    for (const auto& r : records) {
        if (!r.included || !(r.dc > 0.0) || !(r.alpha > 0.0)) continue;
        groups[r.epsilon].push_back({std::log(r.dc), std::log(r.alpha)});
        ++usable;
    }
    if (usable < 8)
        throw InsufficientData("exponent_fit needs at least 8 records with dc > 0");
    if (groups.size() < 2) throw InsufficientData("exponent_fit needs at least 2 epsilon levels");

    std::vector<double> xs, ys;
    for (auto& [eps, pts] : groups) {
        std::vector<double> lx, ly;
        for (auto& [x, y] : pts) {
            lx.push_back(x);
            ly.push_back(y);
        }
        xs.push_back(median(lx));
        ys.push_back(median(ly));
    }
    const std::size_t k = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += r * r;
    }
    fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

}  // namespace minkolab
