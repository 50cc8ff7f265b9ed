#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minkolab/measure.hpp"
#include "minkolab/polytope.hpp"

namespace minkolab {

struct SolveOptions {
    double tolerance = 1e-8;  // max relative residual on atom weights
    int max_iterations = 500;
    double damping = 0.5;  // initial step damping, line-searched
    std::optional<SupportVector> warm_start;
};

struct SolveReport {
    explicit SolveReport(Polytope b) : body(std::move(b)) {}

    Polytope body;
    double p = 1.0;
    double lambda = 0.0;    // lambda_mu or lambda_{mu,p}
    double residual = 0.0;  // max relative weight error of the returned body
    int iterations = 0;
    bool centered = false;  // p = 1 only
    bool converged = false;
    std::string failure;  // set when converged is false
    std::vector<double> energy_trace;
};

// E_phi = intersection of the halfspaces {x . u <= phi(u)}.
Polytope body_from_support(const SupportVector& phi);

// F_{mu,p}(phi) = lambda |E_phi|^{p/n} - sum w_i phi(u_i)^p. Atoms of mu that
// miss phi's direction set are evaluated through h_{E_phi}, i.e. on the
// realizable envelope of phi.
double energy(const DirectionalMeasure& mu, const SupportVector& phi, double exponent,
              double lambda);

// First variation of F_mu (p = 1 path): lambda S_{E_phi} / (n |E_phi|^{(n-1)/n}) - mu
// on the union direction set.
SignedMeasure energy_gradient(const DirectionalMeasure& mu, const SupportVector& phi,
                              double lambda);

// Recovers the centered polytope with surface measure mu (classical problem).
SolveReport solve_minkowski(const DirectionalMeasure& mu, const SolveOptions& opts = {});

// Recovers the polytope with L_p surface measure mu, 1 < p != n.
SolveReport solve_minkowski_lp(const DirectionalMeasure& mu, double exponent,
                               const SolveOptions& opts = {});

// lambda_{mu,p} = n |E_{mu,p}|^{(n-p)/n} through a solve.
double lambda_constant(const DirectionalMeasure& mu, double exponent,
                       const SolveOptions& opts = {});

}  // namespace minkolab
