#include <cmath>

#include "doctest.h"
#include "minkolab/errors.hpp"
#include "minkolab/polytope.hpp"
#include "test_support.hpp"

using namespace minkolab;
using testsupport::random_polytope;
using testsupport::segment_area;

namespace {
Polytope square(double half) { return box_polytope(2, half); }
}  // namespace

TEST_CASE("from_halfspaces oracles") {
    Polytope sq = square(0.5);
    CHECK(sq.vertices().size() == 4);
    CHECK(sq.volume() == doctest::Approx(1.0).epsilon(1e-12));

    Polytope cube = box_polytope(3, 1.0);
    CHECK(cube.volume() == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(cube.vertices().size() == 8);
    CHECK(cube.facets().size() == 6);

    CHECK_THROWS_AS(
        Polytope::from_halfspaces(2, {{1, 0}, {0, 1}, {Vec{1, 1}.normalized()}}, {1, 1, 1}),
        UnboundedBody);
    CHECK_THROWS_AS(Polytope::from_halfspaces(
                        2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {-1, -1, 1, 1}),
                    EmptyBody);
}

TEST_CASE("redundant halfspaces are pruned and stored ones are tight") {
    Polytope p = Polytope::from_halfspaces(
        2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {Vec{1, 1}.normalized()}},
        {0.5, 0.5, 0.5, 0.5, 5.0});
    CHECK(p.facets().size() == 4);
    for (const auto& f : p.facets()) {
        CHECK(p.support(f.normal) == doctest::Approx(f.offset).epsilon(1e-10));
        CHECK(f.area > 0.0);
    }

    Polytope c = Polytope::from_halfspaces(
        3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
            {Vec{1, 1, 1}.normalized()}},
        {1, 1, 1, 1, 1, 1, 9.0});
    CHECK(c.facets().size() == 6);
}

TEST_CASE("support function") {
    Polytope sq = square(0.5);
    CHECK(sq.support({1, 0}) == doctest::Approx(0.5));
    CHECK(sq.support({1, 1}) == doctest::Approx(1.0));
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        Polytope p = random_polytope(rng, t % 2 ? 3 : 2, 8);
        Vec x = rng.unit_vector(p.dim());
        CHECK(p.support(x * 2.0) == doctest::Approx(2.0 * p.support(x)).epsilon(1e-12));
    }
}

TEST_CASE("surface measure oracles") {
    Polytope unit_sq = Polytope::from_halfspaces(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}},
                                                 {1.0, 0.0, 1.0, 0.0});
    DirectionalMeasure s1 = surface_measure(unit_sq, 1.0);
    CHECK(s1.size() == 4);
    for (const auto& a : s1.atoms()) CHECK(a.weight == doctest::Approx(1.0).epsilon(1e-12));

    // centered square of half-side t: each L_p atom weighs 2 t^{2-p}
    double t = 0.7, p = 2.5;
    DirectionalMeasure sp = surface_measure(square(t), p);
    for (const auto& a : sp.atoms())
        CHECK(a.weight == doctest::Approx(2.0 * std::pow(t, 2.0 - p)).epsilon(1e-12));

    // scaling law S_{2P} = 2^{n-1} S_P at p = 1
    Rng rng(32);
    for (int dim : {2, 3}) {
        Polytope body = random_polytope(rng, dim, 8);
        DirectionalMeasure base = surface_measure(body, 1.0);
        DirectionalMeasure twice = surface_measure(body.scaled(2.0), 1.0);
        CHECK(twice.total_mass() ==
              doctest::Approx(std::pow(2.0, dim - 1) * base.total_mass()).epsilon(1e-12));
    }

    CHECK_THROWS_AS(surface_measure(unit_sq, 2.5), OriginOnSingularBoundary);
}

TEST_CASE("minkowski sum oracles") {
    Polytope sq = square(0.5);
    Polytope origin_ish = box_polytope(2, 1e-14);
    CHECK(minkowski_sum(sq, origin_ish).volume() == doctest::Approx(1.0).epsilon(1e-9));

    // square + diamond with vertices at 0.707: octagon of area 1 + 4*0.707 + 2*0.707^2
    Polytope diamond = polygon_from_vertices({{0.707, 0}, {0, 0.707}, {-0.707, 0}, {0, -0.707}});
    double expected = 1.0 + 4.0 * 0.707 + 2.0 * 0.707 * 0.707;
    CHECK(minkowski_sum(sq, diamond).volume() == doctest::Approx(expected).epsilon(1e-10));

    Rng rng(33);
    for (int dim : {2, 3}) {
        Polytope a = random_polytope(rng, dim, 7);
        Polytope b = random_polytope(rng, dim, 7);
        Polytope s = minkowski_sum(a, b);
        for (int k = 0; k < 100; ++k) {
            Vec u = rng.unit_vector(dim);
            CHECK(s.support(u) == doctest::Approx(a.support(u) + b.support(u)).epsilon(1e-10));
        }
    }
}

TEST_CASE("lp combination") {
    Polytope sq = square(0.5);
    double p = 3.0;
    Polytope doubled = lp_combination(1.0, sq, 1.0, sq, p);
    CHECK(hausdorff(doubled, sq.scaled(std::pow(2.0, 1.0 / p))) ==
          doctest::Approx(0.0).epsilon(1e-9));

    Polytope same = lp_combination(1.0, sq, 0.0, sq, 2.0);
    CHECK(hausdorff(same, sq) == doctest::Approx(0.0).epsilon(1e-11));

    Polytope diamond = polygon_from_vertices({{0.707, 0}, {0, 0.707}, {-0.707, 0}, {0, -0.707}});
    double gap = 0.0;
    Polytope lp_mid = lp_combination(0.5, sq, 0.5, diamond, 2.0, &gap);
    Polytope mink_mid = minkowski_sum(sq.scaled(0.5), diamond.scaled(0.5));
    CHECK(lp_mid.volume() >= mink_mid.volume() - 1e-12);
    CHECK(gap > 0.0);

    // inclusion as support dominance on random directions
    Rng rng(34);
    for (int k = 0; k < 100; ++k) {
        Vec u = rng.unit_vector(2);
        CHECK(lp_mid.support(u) >= mink_mid.support(u) - 1e-10);
    }

    Polytope off = Polytope::from_halfspaces(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}},
                                             {3.0, -1.0, 1.0, 1.0});
    CHECK_THROWS_AS(lp_combination(0.5, off, 0.5, sq, 2.0), OriginNotContained);
}

TEST_CASE("mixed volume oracles") {
    Polytope unit_sq = square(0.5);
    CHECK(mixed_volume(unit_sq, unit_sq, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

    Polytope big = square(1.0);
    Polytope disk = regular_polygon(64, 1.0);
    double v1 = mixed_volume(big, disk, 1.0);
    CHECK(v1 == doctest::Approx(4.0).epsilon(1e-12));  // vertex of the 64-gon sits at angle 0
    CHECK(std::abs(v1 - 4.0) <= 0.002);
    // Wulff check: V1 >= |E|^{1/2} |F|^{1/2}
    CHECK(v1 >= std::sqrt(big.volume()) * std::sqrt(disk.volume()) - 1e-10);
}

TEST_CASE("volume oracles") {
    CHECK(square(0.5).volume() == doctest::Approx(1.0));
    CHECK(box_polytope(3, 1.0).volume() == doctest::Approx(8.0));
    Polytope hex = regular_polygon(6, 1.0);
    CHECK(hex.volume() == doctest::Approx(3.0 * std::sqrt(3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("radii oracles") {
    RadiiResult rs = radii(square(0.5));
    CHECK(rs.inradius == doctest::Approx(0.5));
    CHECK(rs.circumradius == doctest::Approx(std::sqrt(0.5)));
    CHECK(rs.origin_interior);

    RadiiResult rd = radii(regular_polygon(64, 1.0));
    CHECK(rd.inradius == doctest::Approx(std::cos(M_PI / 64.0)).epsilon(1e-12));
    CHECK(rd.circumradius == doctest::Approx(1.0).epsilon(1e-12));

    Polytope shifted = Polytope::from_halfspaces(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}},
                                                 {1.0, 0.0, 1.0, 0.0});
    RadiiResult rt = radii(shifted);
    CHECK_FALSE(rt.origin_interior);
    CHECK(rt.inradius == 0.0);
}

TEST_CASE("hausdorff oracles") {
    Polytope sq = square(0.5);
    CHECK(hausdorff(sq, sq) == doctest::Approx(0.0));

    Polytope a = Polytope::from_halfspaces(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}},
                                           {1.0, 0.0, 1.0, 0.0});
    Polytope b = a.translated({0.3, 0.0});
    CHECK(hausdorff(a, b) == doctest::Approx(0.3).epsilon(1e-12));

    Polytope ball = regular_polygon(64, 1.0);
    CHECK(hausdorff(ball, ball.scaled(2.0)) == doctest::Approx(1.0).epsilon(1e-12));

    // one-sided cross-check against the support gap on a direction grid
    Rng rng(35);
    for (int dim : {2, 3}) {
        Polytope p = random_polytope(rng, dim, 8);
        Polytope q = random_polytope(rng, dim, 8);
        double dh = hausdorff(p, q);
        auto dirs = dim == 2 ? circle_directions(720) : fibonacci_sphere(720);
        for (const Vec& u : dirs)
            CHECK(std::abs(p.support(u) - q.support(u)) <= dh + 1e-8);
    }
}

TEST_CASE("symmetric difference oracles") {
    Polytope sq = square(0.5);
    CHECK(symmetric_difference_volume(sq, sq) == doctest::Approx(0.0));

    Polytope unit = Polytope::from_halfspaces(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}},
                                              {1.0, 0.0, 1.0, 0.0});
    CHECK(symmetric_difference_volume(unit, unit.translated({1.0, 0.0})) ==
          doctest::Approx(2.0).epsilon(1e-12));

    // unit square vs concentric area-1 disk: four circular segments on each side
    double r = 1.0 / std::sqrt(M_PI);
    double seg = segment_area(r, 0.5);
    Polytope gon = regular_polygon(64, 1.0);
    Polytope disk1 = gon.scaled(std::sqrt(1.0 / gon.volume()));  // area exactly 1
    double sym = symmetric_difference_volume(sq, disk1);
    CHECK(sym == doctest::Approx(8.0 * seg).epsilon(0.03));
    CHECK(std::abs(8.0 * seg - 0.1812) < 5e-4);
}

TEST_CASE("fraenkel asymmetry oracles") {
    Polytope sq = square(0.5);
    CHECK(fraenkel_asymmetry(sq, sq) == doctest::Approx(0.0).epsilon(1e-9));

    // homothety invariance
    Polytope moved = sq.scaled(3.0).translated({5.0, 7.0});
    CHECK(fraenkel_asymmetry(sq, moved) == doctest::Approx(0.0).epsilon(1e-6));

    double r = 1.0 / std::sqrt(M_PI);
    double expected = 8.0 * segment_area(r, 0.5);
    double alpha = fraenkel_asymmetry(sq, regular_polygon(64, 1.0));
    CHECK(std::abs(alpha - expected) <= 0.005);
}

TEST_CASE("fraenkel asymmetry is symmetric") {
    Rng rng(36);
    for (int trial = 0; trial < 12; ++trial) {
        int dim = trial % 2 == 0 ? 2 : 3;
        Polytope p = random_polytope(rng, dim, 7);
        Polytope q = random_polytope(rng, dim, 7);
        double ab = fraenkel_asymmetry(p, q);
        double ba = fraenkel_asymmetry(q, p);
        CHECK(ab == doctest::Approx(ba).epsilon(2e-4).scale(1.0));
    }
}

TEST_CASE("projection area oracles") {
    Polytope sq = square(0.5);
    CHECK(projection_area(sq, {1, 0}) == doctest::Approx(1.0));
    CHECK(projection_area(sq, Vec{1, 1}.normalized()) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    Polytope cube = Polytope::from_halfspaces(
        3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}},
        {1, 0, 1, 0, 1, 0});
    CHECK(projection_area(cube, {0, 0, 1}) == doctest::Approx(1.0).epsilon(1e-12));

    // 2D cross-check: shadow equals the width orthogonal to theta
    Rng rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        Polytope p = random_polytope(rng, 2, 8);
        Vec th = rng.unit_vector(2);
        Vec eta = th.perp2();
        CHECK(projection_area(p, th) ==
              doctest::Approx(p.support(eta) + p.support(-eta)).epsilon(1e-10));
    }
}

TEST_CASE("brunn-minkowski on random pairs with homothetic equality") {
    Rng rng(38);
    for (int trial = 0; trial < 200; ++trial) {
        int dim = trial % 2 == 0 ? 2 : 3;
        Polytope p = random_polytope(rng, dim, dim == 2 ? 7 : 9);
        Polytope q = random_polytope(rng, dim, dim == 2 ? 7 : 9);
        double mid = std::pow(minkowski_sum(p.scaled(0.5), q.scaled(0.5)).volume(), 1.0 / dim);
        double rhs = 0.5 * std::pow(p.volume(), 1.0 / dim) + 0.5 * std::pow(q.volume(), 1.0 / dim);
        CHECK(mid >= rhs - 1e-10);

        if (trial % 10 == 0) {
            Polytope hom = p.scaled(1.7).translated(rng.unit_vector(dim) * 0.4);
            double m2 = std::pow(minkowski_sum(p.scaled(0.5), hom.scaled(0.5)).volume(), 1.0 / dim);
            double r2 =
                0.5 * std::pow(p.volume(), 1.0 / dim) + 0.5 * std::pow(hom.volume(), 1.0 / dim);
            CHECK(m2 == doctest::Approx(r2).epsilon(1e-9));
        }
    }
}

TEST_CASE("wulff inequality across exponents") {
    Rng rng(39);
    for (int trial = 0; trial < 60; ++trial) {
        int dim = trial % 2 == 0 ? 2 : 3;
        std::vector<double> ps = dim == 2 ? std::vector<double>{1.0, 1.5, 3.0}
                                          : std::vector<double>{1.0, 2.0, 4.0};
        Polytope p = random_polytope(rng, dim, 8, false, 0.4, 1.2);
        Polytope q = random_polytope(rng, dim, 8, false, 0.4, 1.2);
        for (double pe : ps) {
            double vp = mixed_volume(p, q, pe);
            double bound = std::pow(p.volume(), (dim - pe) / dim) * std::pow(q.volume(), pe / dim);
            CHECK(vp >= bound - 1e-10);
        }
    }
}

TEST_CASE("first variation of volume is the facet area") {
    Rng rng(40);
    for (int dim : {2, 3}) {
        for (int trial = 0; trial < 20; ++trial) {
            Polytope p = random_polytope(rng, dim, dim == 2 ? 7 : 9);
            std::vector<Vec> normals;
            std::vector<double> offsets;
            for (const auto& f : p.facets()) {
                normals.push_back(f.normal);
                offsets.push_back(f.offset);
            }
            int pick = rng.uniform_int(0, static_cast<int>(normals.size()) - 1);
            if (p.facets()[pick].area < 1e-3) continue;
            double step = 1e-5;
            std::vector<double> up = offsets, down = offsets;
            up[pick] += step;
            down[pick] -= step;
            double vplus = Polytope::from_halfspaces(dim, normals, up).volume();
            double vminus = Polytope::from_halfspaces(dim, normals, down).volume();
            double fd = (vplus - vminus) / (2.0 * step);
            CHECK(fd == doctest::Approx(p.facets()[pick].area).epsilon(1e-4));
        }
    }
}

TEST_CASE("polytope invariants: closing condition and volume identity") {
    Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        int dim = trial % 2 == 0 ? 2 : 3;
        Polytope p = random_polytope(rng, dim, 9);
        Vec closing;
        double total = 0.0, vol_sum = 0.0;
        Vec x0 = p.interior_point();
        for (const auto& f : p.facets()) {
            closing += f.normal * f.area;
            total += f.area;
            vol_sum += (f.offset - f.normal.dot(x0)) * f.area / dim;
        }
        CHECK(closing.norm() <= 1e-10 * std::max(1.0, total));
        CHECK(vol_sum == doctest::Approx(p.volume()).epsilon(1e-10));
    }
}
