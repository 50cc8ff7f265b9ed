#include <algorithm>
#include <cstdio>
#include <cmath>
#include <string>

#include "minkolab/errors.hpp"
#include "minkolab/polytope.hpp"

namespace minkolab {

Polytope Polytope::from_halfspaces(int dim, const std::vector<Vec>& normals,
                                   const std::vector<double>& offsets) {
    if (dim != 2 && dim != 3) throw DimensionMismatch("polytope dimension must be 2 or 3");
    if (normals.size() != offsets.size())
        throw InvalidPolytope("normals and offsets differ in length");
    if (normals.size() < static_cast<std::size_t>(dim + 1))
        throw UnboundedBody("need at least dim+1 halfspaces");
    if (dim == 2) {
        for (const Vec& u : normals)
            if (u.z != 0.0) throw InvalidPolytope("2D normal with nonzero z component");
        return build_2d(normals, offsets);
    }
    return build_3d(normals, offsets);
}

void Polytope::finalize(const char* where) {
    const int n = dim_;
    double scale = 1.0;
    for (const Vec& v : vertices_) scale = std::max(scale, v.norm());
    for (const Facet& f : facets_) scale = std::max(scale, std::abs(f.offset));

    // interior point: vertex average is interior for a bounded convex body
    Vec g;
    for (const Vec& v : vertices_) g += v;
    g *= 1.0 / static_cast<double>(vertices_.size());
    interior_ = g;

    double vol = 0.0;
    Vec cent;
    double total_area = 0.0;
    Vec closing;
    for (const Facet& f : facets_) {
        double height = f.offset - f.normal.dot(g);
        if (height <= 0.0) throw InvalidPolytope(std::string(where) + ": interior point escaped");
        double pyramid = height * f.area / n;
        vol += pyramid;
        // centroid of the cone over the facet from g
        cent += (g + (f.centroid - g) * (static_cast<double>(n) / (n + 1.0))) * pyramid;
        total_area += f.area;
        closing += f.normal * f.area;
    }
    if (vol <= 0.0) throw EmptyBody(std::string(where) + ": zero volume");
    volume_ = vol;
    centroid_ = cent * (1.0 / vol);

    if (closing.norm() > 1e-10 * std::max(1.0, total_area) * std::max(1.0, scale)) {
#ifdef MINKOLAB_DEBUG_CLOSING
        std::fprintf(stderr, "closing violation: |sum|=%.6g area=%.6g facets=%zu\n",
                     closing.norm(), total_area, facets_.size());
        for (const Facet& f : facets_)
            std::fprintf(stderr, "  n=(%.12g,%.12g,%.12g) h=%.12g area=%.9g ring=%zu src=%d\n",
                         f.normal.x, f.normal.y, f.normal.z, f.offset, f.area,
                         f.vertex_ids.size(), f.source);
#endif
        throw InvalidPolytope(std::string(where) + ": closing condition violated (|sum| = " +
                              std::to_string(closing.norm()) + ", area = " +
                              std::to_string(total_area) + ")");
    }
    for (const Facet& f : facets_) {
        double s = support(f.normal);
        if (std::abs(s - f.offset) > 1e-8 * std::max(1.0, scale))
            throw InvalidPolytope(std::string(where) + ": stored halfspace is not tight");
    }
}

double Polytope::support(const Vec& x) const {
    double best = -HUGE_VAL;
    for (const Vec& v : vertices_) best = std::max(best, x.dot(v));
    return best;
}

double Polytope::circumradius() const {
    double r = 0.0;
    for (const Vec& v : vertices_) r = std::max(r, v.norm());
    return r;
}

std::vector<Halfspace> Polytope::halfspaces() const {
    std::vector<Halfspace> out;
    out.reserve(facets_.size());
    for (const Facet& f : facets_) out.push_back({f.normal, f.offset});
    return out;
}

Polytope Polytope::translated(const Vec& t) const {
    Polytope p = *this;
    for (Vec& v : p.vertices_) v += t;
    for (Facet& f : p.facets_) {
        f.offset += f.normal.dot(t);
        f.centroid += t;
    }
    p.interior_ += t;
    p.centroid_ += t;
    return p;
}

Polytope Polytope::scaled(double factor) const {
    if (!(factor > 0.0)) throw InvalidPolytope("scale factor must be positive");
    Polytope p = *this;
    for (Vec& v : p.vertices_) v *= factor;
    for (Facet& f : p.facets_) {
        f.offset *= factor;
        f.centroid *= factor;
        f.area *= std::pow(factor, dim_ - 1);
    }
    p.interior_ *= factor;
    p.centroid_ *= factor;
    p.volume_ *= std::pow(factor, dim_);
    return p;
}

SupportVector::SupportVector(int dim, std::vector<SupportEntry> entries) : dim_(dim) {
    if (dim != 2 && dim != 3) throw DimensionMismatch("support vector dimension must be 2 or 3");
    if (entries.empty()) throw InvalidPolytope("support vector needs entries");
    for (auto& e : entries) {
        double n = e.direction.norm();
        if (std::abs(n - 1.0) > 1e-9) throw InvalidPolytope("support direction is not unit length");
        e.direction = e.direction.normalized();
    }
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = i + 1; j < entries.size(); ++j)
            if ((entries[i].direction - entries[j].direction).norm() <= 1e-9)
                throw InvalidPolytope("support directions must be pairwise distinct");
    entries_ = std::move(entries);
}

DirectionalMeasure surface_measure(const Polytope& p, double exponent) {
    if (exponent < 1.0) throw ExcludedExponent("surface measure needs p >= 1");
    std::vector<Atom> atoms;
    atoms.reserve(p.facets().size());
    if (exponent == 1.0) {
        for (const Facet& f : p.facets()) atoms.push_back({f.normal, f.area});
    } else {
        for (const Facet& f : p.facets()) {
            if (f.offset <= 1e-12)
                throw OriginOnSingularBoundary(
                    "facet plane passes through or behind the origin (p > 1)");
            atoms.push_back({f.normal, std::pow(f.offset, 1.0 - exponent) * f.area});
        }
    }
    return {p.dim(), std::move(atoms)};
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("minkowski_sum dims differ");
    std::vector<Vec> normals;
    auto add_dir = [&](const Vec& u) {
        for (const Vec& v : normals)
            if ((v - u).norm() <= 1e-9) return;
        normals.push_back(u);
    };
    for (const Facet& f : p.facets()) add_dir(f.normal);
    for (const Facet& f : q.facets()) add_dir(f.normal);
    if (p.dim() == 3) {
        // candidate normals from interacting edge pairs
        auto edges = [](const Polytope& body) {
            std::vector<std::pair<int, int>> es;
            for (const Facet& f : body.facets()) {
                for (std::size_t k = 0; k < f.vertex_ids.size(); ++k) {
                    int a = f.vertex_ids[k];
                    int b = f.vertex_ids[(k + 1) % f.vertex_ids.size()];
                    if (a > b) std::swap(a, b);
                    if (std::find(es.begin(), es.end(), std::make_pair(a, b)) == es.end())
                        es.push_back({a, b});
                }
            }
            return es;
        };
        auto ep = edges(p);
        auto eq = edges(q);
        for (const auto& [a1, b1] : ep) {
            Vec d1 = p.vertices()[b1] - p.vertices()[a1];
            for (const auto& [a2, b2] : eq) {
                Vec d2 = q.vertices()[b2] - q.vertices()[a2];
                Vec c = d1.cross(d2);
                double n = c.norm();
                if (n <= 1e-12 * d1.norm() * d2.norm()) continue;
                c *= 1.0 / n;
                add_dir(c);
                add_dir(-c);
            }
        }
    }
    std::vector<double> offsets;
    offsets.reserve(normals.size());
    for (const Vec& u : normals) offsets.push_back(p.support(u) + q.support(u));
    return Polytope::from_halfspaces(p.dim(), normals, offsets);
}

Polytope lp_combination(double t, const Polytope& p, double s, const Polytope& q, double exponent,
                        double* gap_bound) {
    if (p.dim() != q.dim()) throw DimensionMismatch("lp_combination dims differ");
    if (!(exponent > 1.0)) throw ExcludedExponent("lp_combination needs p > 1");
    if (t < 0.0 || s < 0.0 || t + s <= 0.0)
        throw InvalidPolytope("lp_combination needs t, s >= 0 with t + s > 0");
    for (const Facet& f : p.facets())
        if (f.offset < -1e-12) throw OriginNotContained("first body misses the origin");
    for (const Facet& f : q.facets())
        if (f.offset < -1e-12) throw OriginNotContained("second body misses the origin");

    std::vector<Vec> dirs;
    auto add_dir = [&](const Vec& u) {
        for (const Vec& v : dirs)
            if ((v - u).norm() <= 1e-9) return;
        dirs.push_back(u);
    };
    for (const Facet& f : p.facets()) add_dir(f.normal);
    for (const Facet& f : q.facets()) add_dir(f.normal);
    double mesh_angle;
    if (p.dim() == 2) {
        for (const Vec& u : circle_directions(720)) add_dir(u);
        mesh_angle = M_PI / 720.0;
    } else {
        for (const Vec& u : fibonacci_sphere(1280)) add_dir(u.normalized());
        mesh_angle = 2.4 / std::sqrt(1280.0);
    }
    std::vector<double> vals;
    vals.reserve(dirs.size());
    for (const Vec& u : dirs) {
        double hp = std::max(0.0, p.support(u));
        double hq = std::max(0.0, q.support(u));
        vals.push_back(std::pow(t * std::pow(hp, exponent) + s * std::pow(hq, exponent),
                                1.0 / exponent));
    }
    Polytope body = Polytope::from_halfspaces(p.dim(), dirs, vals);
    if (gap_bound) *gap_bound = 2.0 * body.circumradius() * mesh_angle;
    return body;
}

double mixed_volume(const Polytope& p, const Polytope& q, double exponent) {
    if (p.dim() != q.dim()) throw DimensionMismatch("mixed_volume dims differ");
    DirectionalMeasure sm = surface_measure(p, exponent);
    double acc = 0.0;
    for (const Atom& a : sm.atoms()) {
        double h = q.support(a.dir);
        if (exponent != 1.0) {
            if (h < 0.0) throw OriginNotContained("second body misses the origin (p > 1)");
            acc += std::pow(h, exponent) * a.weight;
        } else {
            acc += h * a.weight;
        }
    }
    return acc / p.dim();
}

RadiiResult radii(const Polytope& p) {
    RadiiResult r;
    r.circumradius = p.circumradius();
    double hmin = HUGE_VAL;
    for (const Facet& f : p.facets()) hmin = std::min(hmin, f.offset);
    if (hmin > 0.0) {
        r.inradius = hmin;
        r.origin_interior = true;
    }
    return r;
}

namespace {

double dist_point_segment(const Vec& x, const Vec& a, const Vec& b) {
    Vec d = b - a;
    double len2 = d.norm2();
    double t = len2 > 0.0 ? std::clamp((x - a).dot(d) / len2, 0.0, 1.0) : 0.0;
    return (x - (a + d * t)).norm();
}

double dist_point_polytope(const Vec& x, const Polytope& p) {
    bool inside = true;
    for (const Facet& f : p.facets())
        if (f.normal.dot(x) > f.offset) {
            inside = false;
            break;
        }
    if (inside) return 0.0;
    double best = HUGE_VAL;
    if (p.dim() == 2) {
        for (const Facet& f : p.facets())
            best = std::min(best, dist_point_segment(x, p.vertices()[f.vertex_ids[0]],
                                                     p.vertices()[f.vertex_ids[1]]));
        return best;
    }
    for (const Facet& f : p.facets()) {
        // project onto the facet plane, then test the polygon
        Vec proj = x - f.normal * (f.normal.dot(x) - f.offset);
        bool in_poly = true;
        const auto& ids = f.vertex_ids;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            const Vec& a = p.vertices()[ids[k]];
            const Vec& b = p.vertices()[ids[(k + 1) % ids.size()]];
            if ((b - a).cross(proj - a).dot(f.normal) < 0.0) {
                in_poly = false;
                break;
            }
        }
        if (in_poly) {
            best = std::min(best, (x - proj).norm());
        } else {
            for (std::size_t k = 0; k < ids.size(); ++k)
                best = std::min(best, dist_point_segment(x, p.vertices()[ids[k]],
                                                         p.vertices()[ids[(k + 1) % ids.size()]]));
        }
    }
    return best;
}

}  // namespace

double hausdorff(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("hausdorff dims differ");
    double d = 0.0;
    for (const Vec& v : p.vertices()) d = std::max(d, dist_point_polytope(v, q));
    for (const Vec& v : q.vertices()) d = std::max(d, dist_point_polytope(v, p));
    return d;
}

double intersection_volume(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("intersection dims differ");
    std::vector<Vec> normals;
    std::vector<double> offsets;
    for (const Facet& f : p.facets()) {
        normals.push_back(f.normal);
        offsets.push_back(f.offset);
    }
    for (const Facet& f : q.facets()) {
        normals.push_back(f.normal);
        offsets.push_back(f.offset);
    }
    try {
        Polytope inter = Polytope::from_halfspaces(p.dim(), normals, offsets);
        double v = inter.volume();
        return v < 1e-14 ? 0.0 : v;
    } catch (const EmptyBody&) {
        return 0.0;
    }
}

double symmetric_difference_volume(const Polytope& p, const Polytope& q) {
    return p.volume() + q.volume() - 2.0 * intersection_volume(p, q);
}

double fraenkel_asymmetry(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("fraenkel_asymmetry dims differ");
    const int n = p.dim();
    double r = std::pow(p.volume() / q.volume(), 1.0 / n);
    Polytope qs = q.scaled(r);

    const double scale = p.circumradius() + qs.circumradius();
    auto overlap = [&](const Vec& shift) { return intersection_volume(p, qs.translated(shift)); };

    Vec start = p.centroid() - qs.centroid();
    // deterministic restarts around the aligned start
    std::vector<Vec> starts = {start, start + Vec{0.11, -0.07, n == 3 ? 0.05 : 0.0} * scale,
                               start + Vec{-0.06, 0.12, n == 3 ? -0.09 : 0.0} * scale};
    double best_overlap = 0.0;
    for (const Vec& s0 : starts) {
        Vec x = s0;
        double cur = overlap(x);
        double step = 0.25 * scale;
        while (step > 1e-7 * scale) {
            Vec cand_x = x;
            double cand = cur;
            for (int axis = 0; axis < n; ++axis) {
                for (double sgn : {1.0, -1.0}) {
                    Vec probe = x;
                    probe[axis] += sgn * step;
                    double o = overlap(probe);
                    if (o > cand) {
                        cand = o;
                        cand_x = probe;
                    }
                }
            }
            if (cand > cur) {
                cur = cand;
                x = cand_x;
            } else {
                step *= 0.5;
            }
        }
        best_overlap = std::max(best_overlap, cur);
    }
    double alpha = (p.volume() + qs.volume() - 2.0 * best_overlap) / p.volume();
    return std::clamp(alpha, 0.0, 2.0);
}

double projection_area(const Polytope& p, const Vec& theta) {
    Vec th = theta.normalized();
    double acc = 0.0;
    for (const Facet& f : p.facets()) acc += f.area * std::abs(th.dot(f.normal));
    return 0.5 * acc;
}

}  // namespace minkolab
