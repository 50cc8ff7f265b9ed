#include <algorithm>
#include <cmath>
#include <map>

#include "minkolab/errors.hpp"
#include "minkolab/linprog.hpp"
#include "minkolab/polytope.hpp"

namespace minkolab {

// 3D construction: Chebyshev-center translation, point-plane duality and an
// incremental convex hull of the dual points. Hull facets map back to primal
// vertices; hull vertices map back to tight halfspaces.

namespace {

struct HullFace {
    int a, b, c;
    Vec n;  // outward unit normal
    double off;
    bool alive = true;
};

double face_dist(const HullFace& f, const Vec& p) { return f.n.dot(p) - f.off; }

std::vector<HullFace> incremental_hull(const std::vector<Vec>& pts) {
    const int m = static_cast<int>(pts.size());
    if (m < 4) throw UnboundedBody("too few dual points for a 3D hull");
    double scale = 0.0;
    for (const Vec& p : pts) scale = std::max(scale, p.norm());
    const double eps = 1e-12 * scale;

    // well-spread seed tetrahedron
    int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
    for (int i = 1; i < m; ++i)
        if (pts[i].x < pts[i0].x) i0 = i;
    double best = -1.0;
    for (int i = 0; i < m; ++i) {
        double d = (pts[i] - pts[i0]).norm();
        if (d > best) {
            best = d;
            i1 = i;
        }
    }
    best = -1.0;
    for (int i = 0; i < m; ++i) {
        double d = (pts[i1] - pts[i0]).cross(pts[i] - pts[i0]).norm();
        if (d > best) {
            best = d;
            i2 = i;
        }
    }
    Vec nrm = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
    best = -1.0;
    for (int i = 0; i < m; ++i) {
        double d = std::abs(nrm.dot(pts[i] - pts[i0]));
        if (d > best) {
            best = d;
            i3 = i;
        }
    }
    if (best <= eps) throw UnboundedBody("dual points are coplanar");

    Vec g = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) * 0.25;
    std::vector<HullFace> faces;
    auto add_face = [&](int a, int b, int c) {
        HullFace f;
        f.a = a;
        f.b = b;
        f.c = c;
        f.n = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
        double len = f.n.norm();
        if (len > 0.0) f.n *= 1.0 / len;
        f.off = f.n.dot(pts[a]);
        if (face_dist(f, g) > 0.0) {
            std::swap(f.b, f.c);
            f.n = -f.n;
            f.off = -f.off;
        }
        faces.push_back(f);
    };
    add_face(i0, i1, i2);
    add_face(i0, i1, i3);
    add_face(i0, i2, i3);
    add_face(i1, i2, i3);

    for (int q = 0; q < m; ++q) {
        if (q == i0 || q == i1 || q == i2 || q == i3) continue;
        std::vector<int> visible;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (faces[f].alive && face_dist(faces[f], pts[q]) > eps) visible.push_back(static_cast<int>(f));
        }
        if (visible.empty()) continue;
        // horizon = directed edges of visible faces whose reverse is not visible
        std::map<std::pair<int, int>, int> edge_count;
        for (int f : visible) {
            const HullFace& fc = faces[f];
            int vs[3] = {fc.a, fc.b, fc.c};
            for (int e = 0; e < 3; ++e) {
                int u = vs[e], v = vs[(e + 1) % 3];
                ++edge_count[{std::min(u, v), std::max(u, v)}];
            }
        }
        std::vector<std::pair<int, int>> horizon;
        for (int f : visible) {
            const HullFace& fc = faces[f];
            int vs[3] = {fc.a, fc.b, fc.c};
            for (int e = 0; e < 3; ++e) {
                int u = vs[e], v = vs[(e + 1) % 3];
                if (edge_count[{std::min(u, v), std::max(u, v)}] == 1) horizon.push_back({u, v});
            }
        }
        for (int f : visible) faces[f].alive = false;
        for (const auto& [u, v] : horizon) add_face(u, v, q);
    }

    std::vector<HullFace> out;
    for (const auto& f : faces)
        if (f.alive) out.push_back(f);
    return out;
}

// Certified boundedness test: bounded iff min over the sphere of
// max_i u_i . theta is positive. Grid certificate first, exact recession LPs
// when the certificate is inconclusive.
bool is_bounded_3d(const std::vector<Vec>& normals) {
    auto gmax = [&](const Vec& th) {
        double v = -2.0;
        for (const Vec& u : normals) v = std::max(v, u.dot(th));
        return v;
    };
    double gmin = 2.0;
    for (const Vec& th : fibonacci_sphere(512)) gmin = std::min(gmin, gmax(th));
    if (gmin > 0.15) return true;  // 1-Lipschitz objective, covering radius < 0.15

    for (int axis = 0; axis < 3; ++axis) {
        for (double sign : {1.0, -1.0}) {
            detail::LpProblem lp;
            lp.nvars = 6;  // theta split into positive and negative parts
            lp.objective.assign(6, 0.0);
            lp.objective[axis] = sign;
            lp.objective[axis + 3] = -sign;
            for (const Vec& u : normals) {
                lp.rows.push_back({u.x, u.y, u.z, -u.x, -u.y, -u.z});
                lp.rhs.push_back(0.0);
                lp.rel.push_back(-1);
            }
            for (int k = 0; k < 6; ++k) {
                std::vector<double> row(6, 0.0);
                row[k] = 1.0;
                lp.rows.push_back(std::move(row));
                lp.rhs.push_back(1.0);
                lp.rel.push_back(-1);
            }
            detail::LpSolution sol = detail::simplex_solve(lp);
            if (sol.status != detail::LpStatus::Optimal || sol.value > 1e-9) return false;
        }
    }
    return true;
}

Vec chebyshev_center_3d(const std::vector<Vec>& normals, const std::vector<double>& offsets,
                        double scale) {
    detail::LpProblem lp;
    lp.nvars = 8;  // c split (6) + r split (2)
    lp.objective.assign(8, 0.0);
    lp.objective[6] = 1.0;
    lp.objective[7] = -1.0;
    for (std::size_t i = 0; i < normals.size(); ++i) {
        const Vec& u = normals[i];
        lp.rows.push_back({u.x, u.y, u.z, -u.x, -u.y, -u.z, 1.0, -1.0});
        lp.rhs.push_back(offsets[i]);
        lp.rel.push_back(-1);
    }
    detail::LpSolution sol = detail::simplex_solve(lp);
    if (sol.status != detail::LpStatus::Optimal)
        throw InvalidPolytope("Chebyshev center program failed");
    double r = sol.x[6] - sol.x[7];
    if (r <= 1e-12 * scale) throw EmptyBody("halfspace intersection has no interior");
    return {sol.x[0] - sol.x[3], sol.x[1] - sol.x[4], sol.x[2] - sol.x[5]};
}

}  // namespace

Polytope Polytope::build_3d(const std::vector<Vec>& normals_in,
                            const std::vector<double>& offsets_in) {
    std::vector<Vec> normals;
    std::vector<double> offsets;
    std::vector<int> sources;
    for (std::size_t i = 0; i < normals_in.size(); ++i) {
        double n = normals_in[i].norm();
        if (n < 1e-12) throw InvalidPolytope("zero normal");
        Vec u = normals_in[i] * (1.0 / n);
        double h = offsets_in[i] / n;
        bool merged = false;
        for (std::size_t j = 0; j < normals.size(); ++j) {
            if ((normals[j] - u).norm() <= 1e-9) {
                if (h < offsets[j]) offsets[j] = h;
                merged = true;
                break;
            }
        }
        if (!merged) {
            normals.push_back(u);
            offsets.push_back(h);
            sources.push_back(static_cast<int>(i));
        }
    }
    if (normals.size() < 4) throw UnboundedBody("fewer than 4 independent halfspaces");
    if (!is_bounded_3d(normals))
        throw UnboundedBody("normals concentrated in a closed hemisphere");

    double scale_h = 1.0;
    for (double h : offsets) scale_h = std::max(scale_h, std::abs(h));

    double hmin = offsets[0];
    for (double h : offsets) hmin = std::min(hmin, h);
    Vec x0;
    if (hmin <= 0.02 * scale_h) x0 = chebyshev_center_3d(normals, offsets, scale_h);

    const std::size_t m = normals.size();
    std::vector<double> shifted(m);
    std::vector<Vec> dual(m);
    for (std::size_t i = 0; i < m; ++i) {
        shifted[i] = offsets[i] - normals[i].dot(x0);
        if (shifted[i] <= 1e-14 * scale_h) throw EmptyBody("interior point is not strict");
        dual[i] = normals[i] * (1.0 / shifted[i]);
    }

    std::vector<HullFace> hull = incremental_hull(dual);

    // Hull face -> primal vertex, solving the three defining planes exactly.
    std::vector<Vec> verts;
    std::vector<std::vector<int>> facet_vertex_sets(m);
    double vtx_scale = 1.0;
    std::vector<int> face_vertex(hull.size(), -1);
    for (std::size_t f = 0; f < hull.size(); ++f) {
        const HullFace& fc = hull[f];
        double a[9] = {normals[fc.a].x, normals[fc.a].y, normals[fc.a].z,
                       normals[fc.b].x, normals[fc.b].y, normals[fc.b].z,
                       normals[fc.c].x, normals[fc.c].y, normals[fc.c].z};
        double b[3] = {shifted[fc.a], shifted[fc.b], shifted[fc.c]};
        double out[3];
        if (!solve3x3(a, b, out)) throw InvalidPolytope("degenerate vertex system");
        Vec v{out[0], out[1], out[2]};
        int id = -1;
        for (std::size_t k = 0; k < verts.size(); ++k) {
            if ((verts[k] - v).norm() <= 1e-9 * vtx_scale) {
                id = static_cast<int>(k);
                break;
            }
        }
        if (id < 0) {
            id = static_cast<int>(verts.size());
            verts.push_back(v);
            vtx_scale = std::max(vtx_scale, v.norm());
        }
        face_vertex[f] = id;
        for (int pi : {fc.a, fc.b, fc.c}) {
            auto& set = facet_vertex_sets[pi];
            if (std::find(set.begin(), set.end(), id) == set.end()) set.push_back(id);
        }
    }

    Polytope p;
    p.dim_ = 3;
    p.vertices_.reserve(verts.size());
    for (const Vec& v : verts) p.vertices_.push_back(v + x0);

    for (std::size_t i = 0; i < m; ++i) {
        auto& ids = facet_vertex_sets[i];
        if (ids.size() < 3) continue;  // redundant or touching halfspace
        const Vec& u = normals[i];
        // order the ring around the facet normal
        Vec axis = std::abs(u.z) < 0.9 ? Vec{0, 0, 1} : Vec{1, 0, 0};
        Vec b1 = u.cross(axis).normalized();
        Vec b2 = u.cross(b1).normalized();
        Vec c;
        for (int id : ids) c += verts[id];
        c *= 1.0 / static_cast<double>(ids.size());
        std::sort(ids.begin(), ids.end(), [&](int l, int r) {
            Vec dl = verts[l] - c, dr = verts[r] - c;
            return std::atan2(dl.dot(b2), dl.dot(b1)) < std::atan2(dr.dot(b2), dr.dot(b1));
        });
        double area2 = 0.0;
        Vec weighted;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            const Vec& va = verts[ids[k]];
            const Vec& vb = verts[ids[(k + 1) % ids.size()]];
            double tri2 = (va - c).cross(vb - c).dot(u);
            weighted += (va + vb + c) * (tri2 / 3.0);
            area2 += tri2;
        }
        double area = 0.5 * std::abs(area2);
        if (area <= 1e-12 * vtx_scale * vtx_scale) continue;
        Facet f;
        f.normal = u;
        f.offset = offsets[i];
        f.source = sources[i];
        f.vertex_ids = ids;
        f.area = area;
        f.centroid = weighted * (1.0 / area2) + x0;
        p.facets_.push_back(std::move(f));
    }
    if (p.facets_.size() < 4) throw EmptyBody("intersection degenerates to lower dimension");
    p.finalize("from_halfspaces(3d)");
    return p;
}

}  // namespace minkolab
