#pragma once

#include <vector>

#include "minkolab/geometry.hpp"

namespace minkolab {

struct Atom {
    Vec dir;        // unit vector on S^{n-1}
    double weight;  // strictly positive mass
};

// Finite nonnegative atomic measure on the unit sphere. Directions are
// normalized at construction; atoms closer than chordal tolerance 1e-9 are
// merged by weight addition.
class DirectionalMeasure {
  public:
    DirectionalMeasure(int dim, std::vector<Atom> atoms);

    int dim() const { return dim_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double total_mass() const { return mass_; }

  private:
    int dim_;
    std::vector<Atom> atoms_;
    double mass_;
};

// Atomic set function with signed values, e.g. energy gradients or mu - nu.
struct SignedAtom {
    Vec dir;
    double value;
};
struct SignedMeasure {
    int dim = 2;
    std::vector<SignedAtom> atoms;
};

struct DispersionReport {
    double theta = 0.0;
    double theta_plus = 0.0;
    Vec argmin_direction;      // witness for theta
    double bracket_width = 0.0;  // Lipschitz certificate width (0 when exact, n=2)
    double mass_bound_delta = 0.0;
    bool mass_bound_holds = false;
};

Vec barycenter(const DirectionalMeasure& mu);

// Evaluates both dispersion functionals. n=2 is exact (breakpoint and
// stationary-point enumeration); n=3 uses a Fibonacci grid of `grid_nodes`
// points plus local descent, with a Lipschitz bracket reported.
DispersionReport dispersion(const DirectionalMeasure& mu, int grid_nodes = 4096);

double theta(const DirectionalMeasure& mu, int grid_nodes = 4096);
double theta_plus(const DirectionalMeasure& mu, int grid_nodes = 4096);

// Checks mu(Omega_{theta,delta}) > delta on the evaluation grid, with
// delta = min(Theta/(2 mass), Theta/2). Throws DegenerateMeasure if Theta = 0.
DispersionReport mass_bound_check(const DirectionalMeasure& mu, int grid_nodes = 4096);

// sup over convex bodies K inside the unit ball of |integral of h_K d(mu-nu)|,
// solved as a convex program over one support witness point per atom direction.
double dual_convex_distance(const DirectionalMeasure& mu, const DirectionalMeasure& nu);

// Exact discrete optimal transport with chordal ground cost.
double wasserstein1(const DirectionalMeasure& mu, const DirectionalMeasure& nu);

DirectionalMeasure scaled(const DirectionalMeasure& mu, double factor);
DirectionalMeasure normalized(const DirectionalMeasure& mu);  // probability mass

// Rotates atoms tangentially by small angles so the barycenter vanishes,
// distributing the correction proportionally to weights. Directions stay
// unit length and move O(|barycenter|/mass).
DirectionalMeasure recentered(const DirectionalMeasure& mu, double tol = 1e-10,
                              int max_rounds = 8);

namespace detail {
// Diminishing-step projected ascent fallback for the dual-convex program;
// exposed for direct testing. Returns a feasible lower bound on the optimum.
double dc_projected_ascent(const std::vector<Vec>& dirs, const std::vector<double>& signs,
                           int dim, int iterations = 20000);
}  // namespace detail

}  // namespace minkolab
