#include "minkolab/solver.hpp"

#include <algorithm>
#include <cmath>

#include "minkolab/errors.hpp"

namespace minkolab {

namespace {

// Matches phi entries onto the atom directions of mu; unmatched atoms get the
// realizable value h_{E_phi}(u).
double phi_value_at(const SupportVector& phi, const Polytope& body, const Vec& u) {
    for (const auto& e : phi.entries())
        if ((e.direction - u).norm() <= 1e-9) return e.value;
    return body.support(u);
}

struct BuildResult {
    Polytope body;
    std::vector<double> areas;  // per input atom, 0 when the facet vanished
};

BuildResult build_from_offsets(const DirectionalMeasure& mu, const std::vector<double>& h) {
    std::vector<Vec> normals;
    normals.reserve(mu.size());
    for (const auto& a : mu.atoms()) normals.push_back(a.dir);
    BuildResult r{Polytope::from_halfspaces(mu.dim(), normals, h), {}};
    r.areas.assign(mu.size(), 0.0);
    for (const Facet& f : r.body.facets()) r.areas[f.source] = f.area;
    return r;
}

// Tightness clamp for atoms whose facet vanished: pull the offset just inside
// the hull of the remaining constraints so the facet can reappear.
bool clamp_dropped(const DirectionalMeasure& mu, std::vector<double>& h, const BuildResult& br) {
    bool clamped = false;
    std::size_t i = 0;
    for (const auto& a : mu.atoms()) {
        if (br.areas[i] <= 0.0) {
            double hull = br.body.support(a.dir);
            double margin = std::max(1e-10, 1e-10 * std::abs(hull));
            if (h[i] > hull - margin) {
                h[i] = hull - margin;
                clamped = true;
            }
        }
        ++i;
    }
    return clamped;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> initial_offsets(const DirectionalMeasure& mu, const SolveOptions& opts) {
    std::vector<double> h(mu.size(), 1.0);
    if (opts.warm_start) {
        Polytope guess = body_from_support(*opts.warm_start);
        std::size_t i = 0;
        for (const auto& a : mu.atoms()) h[i++] = phi_value_at(*opts.warm_start, guess, a.dir);
    }
    return h;
}

}  // namespace

Polytope body_from_support(const SupportVector& phi) {
    std::vector<Vec> normals;
    std::vector<double> offsets;
    normals.reserve(phi.entries().size());
    for (const auto& e : phi.entries()) {
        normals.push_back(e.direction);
        offsets.push_back(e.value);
    }
    return Polytope::from_halfspaces(phi.dim(), normals, offsets);
}

double energy(const DirectionalMeasure& mu, const SupportVector& phi, double exponent,
              double lambda) {
    const int n = mu.dim();
    if (std::abs(exponent - n) <= 1e-12) throw ExcludedExponent("p = n is excluded");
    if (mu.dim() != phi.dim()) throw DimensionMismatch("energy dims differ");
    Polytope body = body_from_support(phi);
    double term = 0.0;
    for (const auto& a : mu.atoms()) {
        double v = phi_value_at(phi, body, a.dir);
        if (exponent != 1.0) {
            if (v < 0.0) throw OriginNotContained("negative support value under p > 1 energy");
            term += a.weight * std::pow(v, exponent);
        } else {
            term += a.weight * v;
        }
    }
    return lambda * std::pow(body.volume(), exponent / n) - term;
}

SignedMeasure energy_gradient(const DirectionalMeasure& mu, const SupportVector& phi,
                              double lambda) {
    if (mu.dim() != phi.dim()) throw DimensionMismatch("energy_gradient dims differ");
    Polytope body = body_from_support(phi);
    const int n = mu.dim();
    double coeff = lambda / (n * std::pow(body.volume(), (n - 1.0) / n));

    SignedMeasure g;
    g.dim = mu.dim();
    auto add = [&](const Vec& u, double v) {
        for (auto& a : g.atoms) {
            if ((a.dir - u).norm() <= 1e-9) {
                a.value += v;
                return;
            }
        }
        g.atoms.push_back({u, v});
    };
    for (const Facet& f : body.facets()) add(f.normal, coeff * f.area);
    for (const auto& a : mu.atoms()) add(a.dir, -a.weight);
    return g;
}

SolveReport solve_minkowski(const DirectionalMeasure& mu, const SolveOptions& opts) {
    const int n = mu.dim();
    const double mass = mu.total_mass();
    if (barycenter(mu).norm() > 1e-8 * std::max(1.0, mass))
        throw DegenerateMeasure("measure barycenter must vanish for p = 1");
    if (theta(mu) <= 1e-10 * std::max(1.0, mass))
        throw DegenerateMeasure("measure is supported on a hyperplane");

    std::vector<double> w;
    w.reserve(mu.size());
    for (const auto& a : mu.atoms()) w.push_back(a.weight);
    const std::size_t m = w.size();

    std::vector<double> h = initial_offsets(mu, opts);
    std::vector<double> f_trace;
    std::vector<double> best_h;
    double best_rho = HUGE_VAL;
    double damping = opts.damping;
    int dropouts = 0;
    int iterations = 0;
    bool converged = false;
    std::string failure;

    std::vector<double> prev_h, prev_d;

    {
        BuildResult br = build_from_offsets(mu, h);
        double vn = std::pow(br.body.volume(), 1.0 / n);
        for (double& v : h) v /= vn;
    }

    for (int it = 0; it < opts.max_iterations; ++it) {
        iterations = it + 1;
        BuildResult br = build_from_offsets(mu, h);
        if (clamp_dropped(mu, h, br)) {
            damping = std::max(0.5 * damping, 1e-6);
            if (++dropouts > 60) {
                failure = "NoConvergence: facet of an atom keeps vanishing";
                break;
            }
            BuildResult rb = build_from_offsets(mu, h);
            double vn = std::pow(rb.body.volume(), 1.0 / n);
            for (double& v : h) v /= vn;
            prev_h.clear();
            continue;
        }
        const std::vector<double>& a = br.areas;
        double wh = dot(w, h);
        double kappa = n / wh;  // KKT proportionality at |P(h)| = 1
        double rho = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            rho = std::max(rho, std::abs(a[i] - kappa * w[i]) / (kappa * w[i]));
        f_trace.push_back(wh);
        if (rho < best_rho) {
            best_rho = rho;
            best_h = h;
        }
        if (rho <= opts.tolerance) {
            converged = true;
            break;
        }

        // gradient of F_mu = (w . h) / V^{1/n} at V = 1
        std::vector<double> d(m);
        for (std::size_t i = 0; i < m; ++i) d[i] = w[i] - (wh / n) * a[i];
        double dn2 = dot(d, d);
        if (dn2 <= 0.0) {
            converged = rho <= opts.tolerance;
            break;
        }

        double eta = damping * std::sqrt(dot(h, h)) / std::sqrt(dn2);
        // Barzilai-Borwein proposal from the previous accepted step
        if (!prev_h.empty()) {
            double sy = 0.0, ss = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                double sh = h[i] - prev_h[i];
                double yd = d[i] - prev_d[i];
                sy += sh * yd;
                ss += sh * sh;
            }
            if (sy > 1e-300) eta = ss / sy;
        }

        bool accepted = false;
        for (int ls = 0; ls < 45; ++ls) {
            std::vector<double> trial(m);
            for (std::size_t i = 0; i < m; ++i) trial[i] = h[i] - eta * d[i];
            try {
                BuildResult tb = build_from_offsets(mu, trial);
                double vn = std::pow(tb.body.volume(), 1.0 / n);
                for (double& v : trial) v /= vn;
                double f_new = dot(w, trial);
                bool armijo = f_new <= wh - 1e-4 * eta * dn2;
                bool residual_drop = false;
                if (!armijo && f_new <= wh + 1e-12 * std::abs(wh)) {
                    // near the optimum the energy is flat at double precision;
                    // fall back to progress on the weight residual
                    BuildResult nb = build_from_offsets(mu, trial);
                    double kappa_t = n / dot(w, trial);
                    double rho_t = 0.0;
                    std::size_t i = 0;
                    for (const auto& atom : mu.atoms()) {
                        rho_t = std::max(rho_t, std::abs(nb.areas[i] - kappa_t * atom.weight) /
                                                    (kappa_t * atom.weight));
                        ++i;
                    }
                    residual_drop = rho_t < 0.9 * rho;
                }
                if (armijo || residual_drop) {
                    prev_h = h;
                    prev_d = d;
                    h = std::move(trial);
                    accepted = true;
                    break;
                }
            } catch (const DomainError&) {
            }
            eta *= 0.5;
        }
        if (!accepted) {
            failure = "NoConvergence: line search stalled";
            break;
        }
    }

    if (!converged && best_rho < HUGE_VAL) h = best_h;

    // KKT rescale so facet areas match the weights, then center.
    BuildResult br = build_from_offsets(mu, h);
    double vn = std::pow(br.body.volume(), 1.0 / n);
    for (double& v : h) v /= vn;
    br = build_from_offsets(mu, h);
    double kappa = n / dot(w, h);
    double lam_scale = std::pow(kappa, -1.0 / (n - 1.0));
    for (double& v : h) v *= lam_scale;
    br = build_from_offsets(mu, h);

    Polytope body = br.body.translated(-br.body.centroid());

    SolveReport rep(std::move(body));
    rep.p = 1.0;
    rep.centered = true;
    rep.iterations = iterations;
    double resid = 0.0;
    {
        std::size_t i = 0;
        for (const auto& atom : mu.atoms()) {
            resid = std::max(resid, std::abs(br.areas[i] - atom.weight) / atom.weight);
            ++i;
        }
    }
    rep.residual = resid;
    rep.converged = converged && resid <= 10.0 * opts.tolerance;
    if (!rep.converged && failure.empty()) failure = "NoConvergence: iteration limit";
    rep.failure = rep.converged ? std::string{} : failure;

    double ih = 0.0;
    for (const auto& atom : mu.atoms()) ih += atom.weight * rep.body.support(atom.dir);
    rep.lambda = ih / std::pow(rep.body.volume(), 1.0 / n);
    rep.energy_trace.reserve(f_trace.size());
    for (double f : f_trace) rep.energy_trace.push_back(rep.lambda - f);
    return rep;
}

SolveReport solve_minkowski_lp(const DirectionalMeasure& mu, double exponent,
                               const SolveOptions& opts) {
    const int n = mu.dim();
    const double mass = mu.total_mass();
    if (!(exponent > 1.0)) throw ExcludedExponent("L_p solver needs p > 1");
    if (std::abs(exponent - n) <= 1e-9) throw ExcludedExponent("p = n is excluded");
    if (theta_plus(mu) <= 1e-10 * std::max(1.0, mass))
        throw HemisphereConcentration("measure lives in a closed hemisphere");

    const double p = exponent;
    std::vector<double> w;
    w.reserve(mu.size());
    for (const auto& a : mu.atoms()) w.push_back(a.weight);
    const std::size_t m = w.size();

    std::vector<double> h = initial_offsets(mu, opts);
    std::vector<double> e_trace;
    std::vector<double> best_h;
    double best_rho = HUGE_VAL;
    double damping = opts.damping;
    int dropouts = 0;
    int iterations = 0;
    bool converged = false;
    std::string failure;

    auto energy_of = [&](const std::vector<double>& hh) {
        double e = 0.0;
        for (std::size_t i = 0; i < m; ++i) e += w[i] * std::pow(hh[i], p);
        return e / p;
    };

    {
        BuildResult br = build_from_offsets(mu, h);
        double vn = std::pow(br.body.volume(), 1.0 / n);
        for (double& v : h) v /= vn;
    }

    for (int it = 0; it < opts.max_iterations; ++it) {
        iterations = it + 1;
        BuildResult br = build_from_offsets(mu, h);
        if (clamp_dropped(mu, h, br)) {
            damping = std::max(0.5 * damping, 1e-6);
            if (++dropouts > 60) {
                failure = "NoConvergence: facet of an atom keeps vanishing";
                break;
            }
            BuildResult rb = build_from_offsets(mu, h);
            double vn = std::pow(rb.body.volume(), 1.0 / n);
            for (double& v : h) v /= vn;
            continue;
        }
        const std::vector<double>& a = br.areas;
        for (std::size_t i = 0; i < m; ++i) h[i] = std::max(h[i], 1e-12);

        // L_p atoms and proportionality residual
        std::vector<double> t(m);
        for (std::size_t i = 0; i < m; ++i) t[i] = std::pow(h[i], 1.0 - p) * a[i];
        double fit = dot(t, w) / dot(w, w);
        double rho = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            rho = std::max(rho, std::abs(t[i] - fit * w[i]) / (fit * w[i]));
        double e_cur = energy_of(h);
        e_trace.push_back(e_cur);
        if (rho < best_rho) {
            best_rho = rho;
            best_h = h;
        }
        if (rho <= opts.tolerance) {
            converged = true;
            break;
        }

        // damped KKT fixed point h_i <- ((a_i / w_i) kappa)^{1/(p-1)}
        double kappa = 0.0;
        for (std::size_t i = 0; i < m; ++i) kappa += w[i] * std::pow(h[i], p);
        kappa /= n;
        std::vector<double> target(m);
        for (std::size_t i = 0; i < m; ++i) {
            double base = std::max(a[i], 1e-300) / w[i] * kappa;
            target[i] = std::pow(base, 1.0 / (p - 1.0));
        }

        double beta = damping;
        bool accepted = false;
        for (int ls = 0; ls < 45; ++ls) {
            std::vector<double> trial(m);
            for (std::size_t i = 0; i < m; ++i)
                trial[i] = std::max((1.0 - beta) * h[i] + beta * target[i], 1e-12);
            try {
                BuildResult tb = build_from_offsets(mu, trial);
                double vn = std::pow(tb.body.volume(), 1.0 / n);
                for (double& v : trial) v /= vn;
                double e_new = energy_of(trial);
                bool decreased = e_new < e_cur;
                bool residual_drop = false;
                if (!decreased && e_new <= e_cur + 1e-12 * std::abs(e_cur)) {
                    BuildResult nb = build_from_offsets(mu, trial);
                    std::vector<double> tt(m);
                    for (std::size_t i = 0; i < m; ++i)
                        tt[i] = std::pow(trial[i], 1.0 - p) * nb.areas[i];
                    double fit_t = dot(tt, w) / dot(w, w);
                    double rho_t = 0.0;
                    for (std::size_t i = 0; i < m; ++i)
                        rho_t = std::max(rho_t, std::abs(tt[i] - fit_t * w[i]) / (fit_t * w[i]));
                    residual_drop = rho_t < 0.9 * rho;
                }
                if (decreased || residual_drop) {
                    h = std::move(trial);
                    accepted = true;
                    break;
                }
            } catch (const DomainError&) {
            }
            beta *= 0.5;
        }
        if (!accepted) {
            failure = "NoConvergence: damped fixed point stalled";
            break;
        }
        damping = std::min(1.0, damping * 1.3);
    }

    if (!converged && best_rho < HUGE_VAL) h = best_h;

    // one global dilation fixes the multiplier: S_{lambda K, p} = lambda^{n-p} S_{K,p}
    BuildResult br = build_from_offsets(mu, h);
    std::vector<double> t(m);
    for (std::size_t i = 0; i < m; ++i) t[i] = std::pow(h[i], 1.0 - p) * br.areas[i];
    double fit = dot(t, w) / dot(w, w);
    double lam_scale = std::pow(fit, 1.0 / (p - n));
    for (double& v : h) v *= lam_scale;
    br = build_from_offsets(mu, h);

    SolveReport rep(std::move(br.body));
    rep.p = p;
    rep.centered = false;
    rep.iterations = iterations;
    double resid = 0.0;
    {
        std::size_t i = 0;
        for (const auto& atom : mu.atoms()) {
            double ti = std::pow(h[i], 1.0 - p) * br.areas[i];
            resid = std::max(resid, std::abs(ti - atom.weight) / atom.weight);
            ++i;
        }
    }
    rep.residual = resid;
    rep.converged = converged && resid <= 10.0 * opts.tolerance;
    if (!rep.converged && failure.empty()) failure = "NoConvergence: iteration limit";
    rep.failure = rep.converged ? std::string{} : failure;

    double ihp = 0.0;
    for (const auto& atom : mu.atoms())
        ihp += atom.weight * std::pow(rep.body.support(atom.dir), p);
    rep.lambda = ihp / std::pow(rep.body.volume(), p / n);
    rep.energy_trace.reserve(e_trace.size());
    for (double e : e_trace) rep.energy_trace.push_back(rep.lambda - p * e);
    return rep;
}

double lambda_constant(const DirectionalMeasure& mu, double exponent, const SolveOptions& opts) {
    SolveReport rep = exponent == 1.0 ? solve_minkowski(mu, opts)
                                      : solve_minkowski_lp(mu, exponent, opts);
    if (!rep.converged) throw NoConvergence("lambda_constant: " + rep.failure);
    return mu.dim() * std::pow(rep.body.volume(), (mu.dim() - exponent) / mu.dim());
}

}  // namespace minkolab
