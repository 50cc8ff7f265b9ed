#include <algorithm>
#include <cmath>

#include "minkolab/errors.hpp"
#include "minkolab/polytope.hpp"

namespace minkolab {

// 2D construction: angular sort + hemisphere gap test, then Sutherland-Hodgman
// clipping of a large box. Surviving edges identify the tight halfspaces;
// vertices are re-solved from adjacent boundary lines afterwards so they do
// not inherit clipping roundoff.

namespace {

struct Sorted {
    Vec u;
    double h;
    int src;
    double ang;
};

struct ClipPoly {
    std::vector<Vec> pts;
    std::vector<int> src;  // source halfspace of the edge leaving pts[k]
};

void clip(ClipPoly& poly, const Vec& u, double h, int id, double band) {
    const std::size_t n = poly.pts.size();
    if (n == 0) return;
    ClipPoly out;
    out.pts.reserve(n + 1);
    out.src.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& a = poly.pts[i];
        const Vec& b = poly.pts[(i + 1) % n];
        double da = u.dot(a) - h;
        double db = u.dot(b) - h;
        // the band keeps tangent lines from splitting edges on sign noise
        bool ain = da <= band, bin = db <= band;
        if (ain) {
            out.pts.push_back(a);
            out.src.push_back(poly.src[i]);
            if (!bin) {
                double t = da / (da - db);
                out.pts.push_back(a + (b - a) * t);
                out.src.push_back(id);
            }
        } else if (bin) {
            double t = da / (da - db);
            out.pts.push_back(a + (b - a) * t);
            out.src.push_back(poly.src[i]);
        }
    }
    poly = std::move(out);
}

void drop_duplicate_points(ClipPoly& poly, double tol) {
    ClipPoly out;
    const std::size_t n = poly.pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& p = poly.pts[i];
        if (!out.pts.empty() && (p - out.pts.back()).norm() <= tol) {
            out.src.back() = poly.src[i];  // outgoing edge belongs to the last of the run
            continue;
        }
        out.pts.push_back(p);
        out.src.push_back(poly.src[i]);
    }
    while (out.pts.size() > 1 && (out.pts.front() - out.pts.back()).norm() <= tol) {
        out.src.front() = out.src.back();
        out.pts.pop_back();
        out.src.pop_back();
    }
    poly = std::move(out);
}

double polygon_area(const std::vector<Vec>& pts) {
    double a = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec& p = pts[i];
        const Vec& q = pts[(i + 1) % pts.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

bool line_intersection(const Vec& u1, double h1, const Vec& u2, double h2, Vec& out_pt) {
    double cross = u1.x * u2.y - u1.y * u2.x;
    if (std::abs(cross) < 1e-12) return false;
    double a[4] = {u1.x, u1.y, u2.x, u2.y};
    double b[2] = {h1, h2};
    double out[2];
    if (!solve2x2(a, b, out)) return false;
    out_pt = {out[0], out[1], 0.0};
    return true;
}

}  // namespace

Polytope Polytope::build_2d(const std::vector<Vec>& normals, const std::vector<double>& offsets) {
    std::vector<Sorted> hs;
    hs.reserve(normals.size());
    for (std::size_t i = 0; i < normals.size(); ++i) {
        double n = normals[i].norm();
        if (n < 1e-12) throw InvalidPolytope("zero normal");
        Vec u = normals[i] * (1.0 / n);
        hs.push_back({u, offsets[i] / n, static_cast<int>(i), std::atan2(u.y, u.x)});
    }
    std::sort(hs.begin(), hs.end(), [](const Sorted& a, const Sorted& b) { return a.ang < b.ang; });
    // merge normals closer than 1e-9 (chordal), keep the smaller offset
    std::vector<Sorted> uniq;
    for (const auto& s : hs) {
        if (!uniq.empty() && (uniq.back().u - s.u).norm() <= 1e-9) {
            if (s.h < uniq.back().h) uniq.back() = s;
            continue;
        }
        uniq.push_back(s);
    }
    if (uniq.size() > 1 && (uniq.front().u - uniq.back().u).norm() <= 1e-9) {
        if (uniq.back().h < uniq.front().h) uniq.front() = uniq.back();
        uniq.pop_back();
    }
    if (uniq.size() < 3) throw UnboundedBody("fewer than 3 independent halfplanes");
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        double next = (i + 1 < uniq.size()) ? uniq[i + 1].ang : uniq[0].ang + 2.0 * M_PI;
        if (next - uniq[i].ang >= M_PI - 1e-12)
            throw UnboundedBody("normals concentrated in a closed halfplane");
    }

    double hmax = 0.0;
    for (const auto& s : uniq) hmax = std::max(hmax, std::abs(s.h));
    double w = 4.0 * (1.0 + hmax);

    ClipPoly poly;
    for (int attempt = 0; attempt < 12; ++attempt) {
        poly.pts = {{-w, -w}, {w, -w}, {w, w}, {-w, w}};
        poly.src = {-1, -2, -3, -4};
        for (std::size_t i = 0; i < uniq.size(); ++i) {
            clip(poly, uniq[i].u, uniq[i].h, static_cast<int>(i), 1e-12 * w);
            drop_duplicate_points(poly, 1e-12 * w);
            if (poly.pts.size() < 3) break;
        }
        if (poly.pts.size() < 3) throw EmptyBody("halfplane intersection has no interior");
        bool box_active = false;
        for (int s : poly.src) box_active |= (s < 0);
        if (!box_active) break;
        w *= 32.0;
        if (w > 1e14) throw UnboundedBody("no bounding box contains the intersection");
    }
    if (std::abs(polygon_area(poly.pts)) <= 1e-14 * w * w)
        throw EmptyBody("halfplane intersection is degenerate");

    double body_scale = 1.0;
    for (const Vec& v : poly.pts) body_scale = std::max({body_scale, std::abs(v.x), std::abs(v.y)});

    // Surviving boundary lines in polygon (= angular) order. Drop lines that
    // their neighbours make redundant: tangent contacts and clipping slivers
    // show up as neighbour intersections already satisfying the line.
    std::vector<int> active;
    for (int s : poly.src)
        if (active.empty() || active.back() != s) active.push_back(s);
    if (active.size() > 1 && active.front() == active.back()) active.pop_back();

    bool changed = true;
    while (changed) {
        changed = false;
        if (active.size() < 3) throw EmptyBody("halfplane intersection is degenerate");
        for (std::size_t i = 0; i < active.size();) {
            const std::size_t k = active.size();
            if (k < 3) break;
            const Sorted& prev = uniq[active[(i + k - 1) % k]];
            const Sorted& cur = uniq[active[i]];
            const Sorted& next = uniq[active[(i + 1) % k]];
            // a line spanning an angular gap >= pi is always essential, and the
            // wedge test below would look at the wrong side of the corner
            double span = next.ang - prev.ang;
            if (span < 0.0) span += 2.0 * M_PI;
            Vec x;
            if (span < M_PI - 1e-12 &&
                line_intersection(prev.u, prev.h, next.u, next.h, x) &&
                cur.u.dot(x) <= cur.h + 1e-12 * body_scale) {
                active.erase(active.begin() + i);
                changed = true;
            } else {
                ++i;
            }
        }
    }
    const std::size_t k = active.size();
    if (k < 3) throw EmptyBody("halfplane intersection is degenerate");

    std::vector<Vec> verts(k);
    for (std::size_t i = 0; i < k; ++i) {
        const Sorted& a = uniq[active[i]];
        const Sorted& b = uniq[active[(i + 1) % k]];
        if (!line_intersection(a.u, a.h, b.u, b.h, verts[(i + 1) % k]))
            throw InvalidPolytope("adjacent boundary lines are parallel");
    }
    Polytope p;
    p.dim_ = 2;
    p.vertices_ = verts;
    p.facets_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const Sorted& s = uniq[active[i]];
        Facet& f = p.facets_[i];
        f.normal = s.u;
        f.offset = s.h;
        f.source = s.src;
        f.vertex_ids = {static_cast<int>(i), static_cast<int>((i + 1) % k)};
        f.area = (verts[(i + 1) % k] - verts[i]).norm();
        f.centroid = (verts[i] + verts[(i + 1) % k]) * 0.5;
    }
    p.finalize("from_halfspaces(2d)");
    return p;
}

Polytope polygon_from_vertices(std::vector<Vec> points) {
    if (points.size() < 3) throw EmptyBody("polygon needs at least 3 vertices");
    Vec c;
    for (const Vec& p : points) c += p;
    c *= 1.0 / static_cast<double>(points.size());
    std::sort(points.begin(), points.end(), [&](const Vec& a, const Vec& b) {
        return std::atan2(a.y - c.y, a.x - c.x) < std::atan2(b.y - c.y, b.x - c.x);
    });
    std::vector<Vec> normals;
    std::vector<double> offsets;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec& a = points[i];
        const Vec& b = points[(i + 1) % points.size()];
        Vec d = b - a;
        if (d.norm() <= 1e-14) continue;
        Vec u = Vec{d.y, -d.x}.normalized();
        normals.push_back(u);
        offsets.push_back(u.dot(a));
    }
    return Polytope::from_halfspaces(2, normals, offsets);
}

Polytope regular_polygon(int sides, double circumradius, double phase) {
    std::vector<Vec> pts;
    pts.reserve(sides);
    for (int i = 0; i < sides; ++i) {
        double a = phase + 2.0 * M_PI * i / sides;
        pts.push_back({circumradius * std::cos(a), circumradius * std::sin(a)});
    }
    return polygon_from_vertices(std::move(pts));
}

Polytope box_polytope(int dim, double halfwidth) {
    std::vector<Vec> normals;
    std::vector<double> offsets;
    for (int k = 0; k < dim; ++k) {
        Vec u;
        u[k] = 1.0;
        normals.push_back(u);
        offsets.push_back(halfwidth);
        normals.push_back(-u);
        offsets.push_back(halfwidth);
    }
    return Polytope::from_halfspaces(dim, normals, offsets);
}

}  // namespace minkolab
