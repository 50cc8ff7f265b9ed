#include <cmath>

#include "doctest.h"
#include "minkolab/errors.hpp"
#include "minkolab/stability.hpp"
#include "test_support.hpp"

using namespace minkolab;
using testsupport::random_polytope;

TEST_CASE("deficits equality cases") {
    Polytope sq = box_polytope(2, 1.0);
    DeficitReport rep = deficits(sq, sq, 1.0);
    CHECK(std::abs(rep.delta_bm) <= 1e-9);
    CHECK(std::abs(rep.delta_iso_p) <= 1e-9);
    CHECK(rep.alpha <= 1e-6);
    CHECK(rep.sigma == doctest::Approx(1.0));
}

TEST_CASE("deficits rotated square oracle") {
    Polytope e = box_polytope(2, 1.0);
    Polytope f = polygon_from_vertices(
        {{std::sqrt(2.0), 0}, {0, std::sqrt(2.0)}, {-std::sqrt(2.0), 0}, {0, -std::sqrt(2.0)}});
    CHECK(mixed_volume(e, f, 1.0) == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));
    DeficitReport rep = deficits(e, f, 1.0);
    // |E/2 + F/2| = 2 + 2 sqrt(2)
    double expected = std::sqrt(2.0 + 2.0 * std::sqrt(2.0)) / 2.0 - 1.0;
    CHECK(rep.delta_bm == doctest::Approx(expected).epsilon(1e-10));
    CHECK(rep.delta_bm == doctest::Approx(0.0986).epsilon(1e-3));
}

TEST_CASE("deficits square versus disk oracle") {
    Polytope e = box_polytope(2, 1.0);
    Polytope disk = regular_polygon(64, 1.0);
    DeficitReport rep = deficits(e, disk, 1.0);
    double v1 = 4.0;
    double expected = v1 / (std::sqrt(disk.volume()) * std::sqrt(e.volume())) - 1.0;
    CHECK(rep.delta_iso_p == doctest::Approx(expected).epsilon(1e-9));
    CHECK(std::abs(rep.delta_iso_p - 0.1284) <= 2e-3);
}

TEST_CASE("deficit inequalities and rigidity on random pairs") {
    Rng rng(61);
    for (int trial = 0; trial < 60; ++trial) {
        int dim = trial % 2 == 0 ? 2 : 3;
        std::vector<double> ps = dim == 2 ? std::vector<double>{1.0, 1.5, 3.0}
                                          : std::vector<double>{1.0, 2.0, 4.0};
        Polytope e = random_polytope(rng, dim, 8, false, 0.4, 1.3);
        Polytope f = random_polytope(rng, dim, 8, false, 0.4, 1.3);
        for (double p : ps) {
            DeficitReport rep = deficits(e, f, p);
            CHECK(rep.delta_bm >= -1e-10);
            CHECK(rep.delta_iso_p >= -1e-10);
            CHECK(rep.sigma >= 1.0);
            if (p > 1.0) CHECK(rep.lp_midpoint_deficit >= -rep.lp_midpoint_gap);
        }
        // Diskant gap and its Hausdorff ratio
        double v1 = mixed_volume(e, f, 1.0);
        double gap = v1 - std::pow(e.volume(), (dim - 1.0) / dim) * std::pow(f.volume(), 1.0 / dim);
        CHECK(gap >= -1e-10);

        if (trial % 6 == 0) {
            Polytope hom = e.scaled(1.4).translated(rng.unit_vector(dim) * 0.3);
            DeficitReport req = deficits(e, hom, 1.0);
            CHECK(req.delta_bm <= 1e-9);
            CHECK(req.delta_iso_p <= 1e-9);  // V_1 is translation invariant in the second slot
            CHECK(req.alpha <= 1e-4);
            DeficitReport rdil = deficits(e, e.scaled(1.7), 2.0);
            CHECK(std::abs(rdil.delta_iso_p) <= 1e-9);
        }
    }
}

TEST_CASE("radius bounds p=1 oracles") {
    RadiusBoundReport sq = radius_bounds(box_polytope(2, 0.5), 1.0);
    CHECK(sq.theta_s == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sq.perimeter == doctest::Approx(4.0).epsilon(1e-12));
    // n = 2 constants: c = 1/4 with S^0, C = 2
    CHECK(sq.c_lower == doctest::Approx(0.25));
    CHECK(sq.c_upper == doctest::Approx(2.0));
    CHECK(sq.lower_ok);
    CHECK(sq.upper_ok);
    CHECK(std::abs(sq.slack_lower) <= 1e-9);  // the square attains the lower bound
    CHECK(sq.slack_upper == doctest::Approx(8.0 - std::sqrt(0.5)).epsilon(1e-9));

    RadiusBoundReport cube = radius_bounds(box_polytope(3, 0.5), 1.0);
    CHECK(cube.c_lower == doctest::Approx(1.0 / (2.0 * std::pow(3.0, std::sqrt(3.0)))));
    CHECK(cube.c_lower == doctest::Approx(0.0746).epsilon(1e-3));
    CHECK(cube.c_upper == doctest::Approx(10.06).epsilon(1e-3));
    CHECK(cube.lower_ok);
    CHECK(cube.upper_ok);
}

TEST_CASE("radius bounds p=1 on random centered symmetric bodies") {
    Rng rng(62);
    for (int trial = 0; trial < 40; ++trial) {
        int dim = trial % 2 == 0 ? 2 : 3;
        Polytope p = random_polytope(rng, dim, 6, true);
        Polytope centered = p.translated(-p.centroid());
        RadiusBoundReport rep = radius_bounds(centered, 1.0);
        CHECK(rep.lower_ok);
        CHECK(rep.upper_ok);
    }
}

TEST_CASE("radius bounds for p > 1 report empirical constants") {
    Polytope cube = box_polytope(3, 0.5);
    double p = 2.0;
    CHECK_THROWS_AS(radius_bounds(cube, p), NormalizationRequired);

    double mass = surface_measure(cube, p).total_mass();
    Polytope norm = cube.scaled(std::pow(mass, 1.0 / (p - 3.0)));
    CHECK(surface_measure(norm, p).total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    RadiusBoundReport rep = radius_bounds(norm, p);
    CHECK(rep.exp_upper == doctest::Approx(p / (p - 1.0)));
    CHECK(rep.exp_lower == doctest::Approx((3.0 - 1.0) * 3.0 * p / ((p - 1.0) * (3.0 - p))));
    CHECK_FALSE(rep.explicit_constants);
    CHECK(rep.empirical_c_lower > 0.0);
    CHECK(std::isfinite(rep.empirical_c_upper));

    double p4 = 4.0;
    double mass4 = surface_measure(cube, p4).total_mass();
    Polytope norm4 = cube.scaled(std::pow(mass4, 1.0 / (p4 - 3.0)));
    RadiusBoundReport rep4 = radius_bounds(norm4, p4);
    CHECK(rep4.exp_lower == doctest::Approx(p4 * 2.0 / (p4 - 3.0)));
    CHECK(rep4.exp_upper == doctest::Approx(p4 / (p4 - 3.0)));
    CHECK(rep4.upper_ok);  // explicit constant from the hemisphere argument

    CHECK_THROWS_AS(radius_bounds(cube, 3.0), ExcludedExponent);
}

TEST_CASE("stability sweep at epsilon zero returns exact zeros") {
    DirectionalMeasure oct = normalized(surface_measure(regular_polygon(8, 1.0), 1.0));
    SweepOptions opts;
    opts.epsilons = {0.0};
    opts.seeds_per_eps = 3;
    std::vector<SweepRecord> recs = stability_sweep(oct, opts);
    REQUIRE(recs.size() == 3);
    for (const auto& r : recs) {
        CHECK(r.dc <= 1e-9);
        CHECK(r.alpha <= 1e-6);
        CHECK(r.w1 <= 1e-9);
    }
}

TEST_CASE("stability sweep invariants and alpha monotonicity") {
    DirectionalMeasure oct = normalized(surface_measure(regular_polygon(8, 1.0), 1.0));
    SweepOptions opts;
    opts.epsilons = {1e-3, 1e-2, 1e-1};
    opts.seeds_per_eps = 6;
    opts.vartheta = 0.3;
    std::vector<std::string> failures;
    std::vector<SweepRecord> recs = stability_sweep(oct, opts, &failures);
    CHECK(failures.empty());
    REQUIRE(recs.size() == 18);
    std::vector<double> med_alpha;
    for (double eps : opts.epsilons) {
        std::vector<double> alphas;
        for (const auto& r : recs) {
            CHECK(r.included);
            CHECK(r.dc <= r.w1 + 1e-8);
            CHECK(r.dc >= 0.0);
            CHECK(r.alpha >= 0.0);
            CHECK(r.midpoint_gap >= -1e-10);
            if (r.epsilon == eps) alphas.push_back(r.alpha);
        }
        med_alpha.push_back(median(alphas));
    }
    CHECK(med_alpha[0] <= med_alpha[1]);
    CHECK(med_alpha[1] <= med_alpha[2]);
}

TEST_CASE("sweep honors the dispersion gate") {
    DirectionalMeasure oct = normalized(surface_measure(regular_polygon(8, 1.0), 1.0));
    SweepOptions opts;
    opts.epsilons = {1e-2};
    opts.seeds_per_eps = 2;
    opts.vartheta = 10.0;  // impossible gate: every record is flagged
    std::vector<SweepRecord> recs = stability_sweep(oct, opts);
    REQUIRE(recs.size() == 2);
    for (const auto& r : recs) CHECK_FALSE(r.included);
}

TEST_CASE("parallel sweep matches the sequential one") {
    DirectionalMeasure oct = normalized(surface_measure(regular_polygon(8, 1.0), 1.0));
    SweepOptions seq;
    seq.epsilons = {1e-2, 1e-3};
    seq.seeds_per_eps = 4;
    SweepOptions par = seq;
    par.jobs = 4;
    std::vector<SweepRecord> a = stability_sweep(oct, seq);
    std::vector<SweepRecord> b = stability_sweep(oct, par);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].dc == b[i].dc);
        CHECK(a[i].alpha == b[i].alpha);
        CHECK(a[i].seed == b[i].seed);
    }
}

TEST_CASE("degeneracy sweep shows the collapse") {
    std::vector<SweepRecord> recs = degeneracy_sweep({1, 2, 4, 8, 16});
    REQUIRE(recs.size() == 5);
    for (std::size_t i = 1; i < recs.size(); ++i) CHECK(recs[i].theta < recs[i - 1].theta);
    CHECK(recs.back().main_ratio > recs.front().main_ratio);
}

TEST_CASE("exponent fit on synthetic power laws") {
    std::vector<SweepRecord> recs;
    for (int i = 0; i < 10; ++i) {
        SweepRecord r;
        r.epsilon = 1e-3 * (i + 1);
        r.dc = 2e-3 * (i + 1);
        r.alpha = std::pow(r.dc, 0.75);
        recs.push_back(r);
    }
    FitResult fit = exponent_fit(recs);
    CHECK(fit.slope == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));

    for (auto& r : recs) r.alpha = 3.0 * r.dc;
    FitResult lin = exponent_fit(recs);
    CHECK(lin.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lin.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));

    recs.resize(4);
    CHECK_THROWS_AS(exponent_fit(recs), InsufficientData);
}
