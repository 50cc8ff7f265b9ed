#include <cmath>

#include "doctest.h"
#include "minkolab/errors.hpp"
#include "minkolab/measure.hpp"
#include "test_support.hpp"

using namespace minkolab;
using testsupport::random_measure;
using testsupport::square_measure;

TEST_CASE("measure construction validates and dedups") {
    CHECK_THROWS_AS(DirectionalMeasure(2, {{{2, 0}, 1.0}}), InvalidMeasure);
    CHECK_THROWS_AS(DirectionalMeasure(2, {{{1, 0}, -1.0}}), InvalidMeasure);
    CHECK_THROWS_AS(DirectionalMeasure(4, {{{1, 0}, 1.0}}), DimensionMismatch);

    DirectionalMeasure merged(2, {{{1, 0}, 1.0}, {{1, 0}, 2.0}, {{0, 1}, 1.0}});
    CHECK(merged.size() == 2);
    CHECK(merged.total_mass() == doctest::Approx(4.0));
}

TEST_CASE("barycenter oracles") {
    DirectionalMeasure antipodal(2, {{{1, 0}, 1.0}, {{-1, 0}, 1.0}});
    CHECK(barycenter(antipodal).norm() == doctest::Approx(0.0));

    DirectionalMeasure single(2, {{{1, 0}, 1.0}});
    CHECK(barycenter(single).x == doctest::Approx(1.0));
    CHECK(barycenter(single).y == doctest::Approx(0.0));

    CHECK(barycenter(square_measure()).norm() == doctest::Approx(0.0));
}

TEST_CASE("theta oracles in 2D") {
    DirectionalMeasure pair(2, {{{1, 0}, 0.5}, {{-1, 0}, 0.5}});
    CHECK(theta(pair) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK(theta(square_measure()) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(theta(square_measure(0.25)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("theta_plus oracles") {
    DirectionalMeasure pair(2, {{{1, 0}, 0.5}, {{-1, 0}, 0.5}});
    CHECK(theta_plus(pair) == doctest::Approx(0.0).epsilon(1e-12));

    DirectionalMeasure single(2, {{{1, 0}, 1.0}});
    CHECK(theta_plus(single) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK(theta_plus(square_measure(0.25)) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("theta in 3D matches closed forms on the cube measure") {
    DirectionalMeasure cube(3, {{{1, 0, 0}, 1.0},
                                {{-1, 0, 0}, 1.0},
                                {{0, 1, 0}, 1.0},
                                {{0, -1, 0}, 1.0},
                                {{0, 0, 1}, 1.0},
                                {{0, 0, -1}, 1.0}});
    // min over theta of 2(|x|+|y|+|z|) = 2 at coordinate directions
    DispersionReport rep = dispersion(cube, 8192);
    CHECK(rep.theta == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(rep.theta_plus == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.bracket_width > 0.0);
}

TEST_CASE("dispersion chain and homogeneity properties") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        int dim = trial % 2 == 0 ? 2 : 3;
        DirectionalMeasure mu = random_measure(rng, dim, 4 + trial % 7, false, 0.0);
        DispersionReport rep = dispersion(mu);
        CHECK(rep.theta >= 2.0 * rep.theta_plus - 1e-10);

        double lam = rng.uniform(0.2, 4.0);
        DirectionalMeasure smu = scaled(mu, lam);
        CHECK(theta(smu) == doctest::Approx(lam * rep.theta).epsilon(1e-9));
        CHECK(theta_plus(smu) == doctest::Approx(lam * rep.theta_plus).epsilon(1e-9));
    }
}

TEST_CASE("mass bound check") {
    // unit-square measure: total mass 4, Theta = 2, delta = 0.25
    DispersionReport rep = mass_bound_check(square_measure());
    CHECK(rep.mass_bound_delta == doctest::Approx(0.25));
    CHECK(rep.mass_bound_holds);

    DispersionReport prob = mass_bound_check(square_measure(0.25));
    CHECK(prob.mass_bound_delta == doctest::Approx(0.25));
    CHECK(prob.mass_bound_holds);

    DirectionalMeasure pair(2, {{{1, 0}, 0.5}, {{-1, 0}, 0.5}});
    CHECK_THROWS_AS(mass_bound_check(pair), DegenerateMeasure);
}

TEST_CASE("mass bound holds on random measures in both dimensions") {
    Rng rng(12);
    for (int trial = 0; trial < 12; ++trial) {
        int dim = trial % 2 == 0 ? 2 : 3;
        DirectionalMeasure mu = random_measure(rng, dim, 5 + trial % 5, false, 0.05);
        CHECK(mass_bound_check(mu).mass_bound_holds);
    }
}

TEST_CASE("recentered kills the barycenter and keeps atoms unit length") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        int dim = trial % 2 == 0 ? 2 : 3;
        DirectionalMeasure mu = random_measure(rng, dim, 6, false, 0.05);
        DirectionalMeasure rec = recentered(mu);
        CHECK(barycenter(rec).norm() <= 1e-10 * std::max(1.0, rec.total_mass()));
        for (const auto& a : rec.atoms()) CHECK(a.dir.norm() == doctest::Approx(1.0));
        CHECK(rec.total_mass() == doctest::Approx(mu.total_mass()));
    }
}

TEST_CASE("surface measure closing condition") {
    Rng rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        int dim = trial % 2 == 0 ? 2 : 3;
        Polytope p = testsupport::random_polytope(rng, dim, dim == 2 ? 7 : 10);
        Vec closing = barycenter(surface_measure(p, 1.0));
        double total = surface_measure(p, 1.0).total_mass();
        CHECK(closing.norm() <= 1e-10 * std::max(1.0, total));
    }
}
