#pragma once

#include <optional>
#include <vector>

#include "minkolab/geometry.hpp"
#include "minkolab/measure.hpp"

namespace minkolab {

struct Halfspace {
    Vec normal;     // unit outward
    double offset;  // support value in that direction
};

// One facet of a polytope. `source` is the index of the defining halfspace in
// the constructor input (after dedup), `vertex_ids` walk the facet boundary.
struct Facet {
    Vec normal;
    double offset = 0.0;
    double area = 0.0;  // length in 2D
    Vec centroid;
    int source = -1;
    std::vector<int> vertex_ids;
};

// Bounded intersection of halfspaces with nonempty interior, dimensions 2 / 3.
// Immutable after construction; all stored halfspaces are tight and back a
// facet of positive area.
class Polytope {
  public:
    static Polytope from_halfspaces(int dim, const std::vector<Vec>& normals,
                                    const std::vector<double>& offsets);

    int dim() const { return dim_; }
    double volume() const { return volume_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<Vec>& vertices() const { return vertices_; }
    const Vec& interior_point() const { return interior_; }
    const Vec& centroid() const { return centroid_; }
    double circumradius() const;  // max vertex norm (about the origin)

    double support(const Vec& x) const;  // max over vertices, 1-homogeneous

    std::vector<Halfspace> halfspaces() const;

    Polytope translated(const Vec& t) const;
    Polytope scaled(double factor) const;  // homothety about the origin

  private:
    Polytope() = default;
    static Polytope build_2d(const std::vector<Vec>& normals, const std::vector<double>& offsets);
    static Polytope build_3d(const std::vector<Vec>& normals, const std::vector<double>& offsets);
    void finalize(const char* where);  // derived data + consistency checks

    int dim_ = 2;
    std::vector<Facet> facets_;
    std::vector<Vec> vertices_;
    Vec interior_;
    Vec centroid_;
    double volume_ = 0.0;
};

// Support-function values on a finite direction set. Realizability is not
// required here; body_from_support checks it implicitly.
struct SupportEntry {
    Vec direction;
    double value;
};
class SupportVector {
  public:
    SupportVector(int dim, std::vector<SupportEntry> entries);
    int dim() const { return dim_; }
    const std::vector<SupportEntry>& entries() const { return entries_; }

  private:
    int dim_;
    std::vector<SupportEntry> entries_;
};

// Surface measure (p = 1) or L_p surface measure (atoms (u_i, h_i^{1-p} a_i)).
// For p > 1 every facet offset about the origin must exceed 1e-12, otherwise
// OriginOnSingularBoundary.
DirectionalMeasure surface_measure(const Polytope& p, double exponent = 1.0);

// Body with support function h_P + h_Q, exact for polytopes.
Polytope minkowski_sum(const Polytope& p, const Polytope& q);

// Polytopal surrogate of the L_p combination t.P +_p s.Q on the union normal
// set refined by a quasi-uniform direction mesh (720 angles in 2D, 1280
// lattice directions in 3D). If gap_bound is given it receives a Hausdorff
// bound for the mesh truncation.
Polytope lp_combination(double t, const Polytope& p, double s, const Polytope& q,
                        double exponent, double* gap_bound = nullptr);

// V_p(P,Q) = (1/n) sum h_Q(u_i)^p w_i over the (L_p) surface measure of P.
double mixed_volume(const Polytope& p, const Polytope& q, double exponent = 1.0);

struct RadiiResult {
    double inradius = 0.0;
    double circumradius = 0.0;
    bool origin_interior = false;  // inradius is 0 and flagged when false
};
// Radii about the origin, matching the centered definition when the caller
// centers the body first.
RadiiResult radii(const Polytope& p);

double hausdorff(const Polytope& p, const Polytope& q);

// |P cap Q| built exactly from the union constraint set; 0 when empty.
double intersection_volume(const Polytope& p, const Polytope& q);

double symmetric_difference_volume(const Polytope& p, const Polytope& q);

// inf over translations of |P delta (x0 + rQ)| / |P| with r^n |Q| = |P|.
// Local translation search is enough: the overlap to the power 1/n is concave.
double fraenkel_asymmetry(const Polytope& p, const Polytope& q);

// (1/2) sum area_i |theta . u_i|, the shadow area on theta-perp.
double projection_area(const Polytope& p, const Vec& theta);

// Convenience constructors.
Polytope polygon_from_vertices(std::vector<Vec> points);  // convex, 2D
Polytope regular_polygon(int sides, double circumradius, double phase = 0.0);
Polytope box_polytope(int dim, double halfwidth);

}  // namespace minkolab
