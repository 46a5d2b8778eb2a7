#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace cat0lab;
using testing::kModels;

TEST_CASE("horofunction vanishes at the basepoint and decreases along the ray") {
    sampling::Engine rng(31);
    for (ModelSpace m : kModels) {
        CAPTURE(to_string(m));
        for (int i = 0; i < 100; ++i) {
            const Point x = sampling::random_point(m, rng, 2);
            const BoundaryPoint xi = sampling::random_boundary(m, rng);
            CHECK(std::fabs(horofunction(xi, x, x)) < 1e-12);
            for (Real t : {Real(1), Real(3), Real(7)}) {
                CHECK(std::fabs(horofunction(xi, x, ray_point(x, xi, t)) + t) < 1e-9);
            }
            const Point z = sampling::random_point(m, rng, 2), w = sampling::random_point(m, rng, 2);
            CHECK(std::fabs(horofunction(xi, x, z) - horofunction(xi, x, w)) <= distance(z, w) + 1e-9);
        }
    }
}

TEST_CASE("horofunction closed forms agree with the finite-t limit") {
    sampling::Engine rng(32);
    for (ModelSpace m : kModels) {
        CAPTURE(to_string(m));
        for (int i = 0; i < 100; ++i) {
            const Point x = sampling::random_point(m, rng, 2);
            const Point z = sampling::random_point(m, rng, 2);
            const BoundaryPoint xi = sampling::random_boundary(m, rng);
            CHECK(std::fabs(horofunction(xi, x, z) - horofunction_limit_oracle(xi, x, z, 1e4L)) < 1e-3);
        }
    }
}

TEST_CASE("Tits distance closed forms") {
    CHECK(tits_distance(E2Boundary{0.1L}, E2Boundary{2 * kPi - 0.1L}).value == doctest::Approx(0.2));
    CHECK(tits_distance(E2Boundary{0}, E2Boundary{kPi}).value == doctest::Approx(kPi));
    CHECK(tits_distance(H2Boundary::finite(1), H2Boundary::finite(2)).infinite);
    CHECK(tits_distance(H2Boundary::finite(1), H2Boundary::finite(1)).value == 0);
    const auto a = words::normalize_infinite("", "a"), b = words::normalize_infinite("", "b");
    CHECK(tits_distance(a, b).infinite);
    CHECK_FALSE(tits_distance(a, a).infinite);
    // H2xR: same xi gives |a1 - a2|, distinct xi gives pi - |a1 + a2|
    const H2Boundary p = H2Boundary::finite(0), q = H2Boundary::infinity();
    CHECK(tits_distance(H2xRBoundary{p, 0.2L}, H2xRBoundary{p, -0.3L}).value == doctest::Approx(0.5));
    CHECK(tits_distance(H2xRBoundary{p, 0.2L}, H2xRBoundary{q, 0.3L}).value == doctest::Approx(kPi - 0.5L));
    CHECK(tits_distance(H2xRBoundary{p, 0.2L}, H2xRBoundary{std::nullopt, kPi / 2}).value ==
          doctest::Approx(kPi / 2 - 0.2L));
}

TEST_CASE("Tits distance on H2xR agrees with the angle inside the flat") {
    sampling::Engine rng(33);
    for (int i = 0; i < 200; ++i) {
        const auto u = std::get<H2xRBoundary>(sampling::random_boundary(ModelSpace::H2xR, rng));
        const auto v = std::get<H2xRBoundary>(sampling::random_boundary(ModelSpace::H2xR, rng));
        // the geodesic u.xi -- v.xi times R is a Euclidean plane; the two
        // directions there are (-cos a1, sin a1) and (cos a2, sin a2)
        const Real dot = -std::cos(u.alpha) * std::cos(v.alpha) + std::sin(u.alpha) * std::sin(v.alpha);
        CHECK(std::fabs(tits_distance(u, v).value - std::acos(dot)) < 1e-12);
    }
}

TEST_CASE("angle at infinity recovers the Tits angle in flat directions") {
    sampling::Engine rng(34);
    for (int i = 0; i < 50; ++i) {
        const BoundaryPoint xi = sampling::random_boundary(ModelSpace::E2, rng),
                            eta = sampling::random_boundary(ModelSpace::E2, rng);
        const AngleEstimate a = angle_at_infinity(E2Point{1, -2}, xi, eta);
        CHECK(std::fabs(a.angle - tits_distance(xi, eta).value) < 1e-9);
    }
    // H2: comparison angles climb toward pi, with deficit of order t^-1/2
    const AngleEstimate h = angle_at_infinity(H2Point{0, 1}, H2Boundary::finite(0), H2Boundary::finite(1));
    CHECK(h.angle > 2.5L);
    CHECK(h.values.back() > h.values.front());
    CHECK(h.monotonicity_defect <= 1e-12);
}

TEST_CASE("trivial Tits balls") {
    sampling::Engine rng(35);
    CHECK(tits_ball_is_trivial(sampling::random_boundary(ModelSpace::H2, rng)));
    CHECK(tits_ball_is_trivial(sampling::random_boundary(ModelSpace::T4, rng)));
    CHECK_FALSE(tits_ball_is_trivial(sampling::random_boundary(ModelSpace::E2, rng)));
    CHECK_FALSE(tits_ball_is_trivial(sampling::random_boundary(ModelSpace::H2xR, rng)));
}

TEST_CASE("boundary metric is a metric on samples") {
    sampling::Engine rng(36);
    for (ModelSpace m : kModels) {
        CAPTURE(to_string(m));
        const Point x = default_basepoint(m);
        for (int i = 0; i < 300; ++i) {
            const auto a = sampling::random_boundary(m, rng), b = sampling::random_boundary(m, rng),
                       c = sampling::random_boundary(m, rng);
            CHECK(boundary_metric(x, a, a) < 1e-12);
            CHECK(std::fabs(boundary_metric(x, a, b) - boundary_metric(x, b, a)) < 1e-12);
            CHECK(boundary_metric(x, a, c) <= boundary_metric(x, a, b) + boundary_metric(x, b, c) + 1e-12);
        }
    }
}

TEST_CASE("visual neighborhoods") {
    const Point x = H2Point{0, 1};
    const BoundaryPoint xi = H2Boundary::infinity();
    const auto u = make_neighborhood(x, xi, 3, 0.5L);
    CHECK(visual_contains(u, xi));
    CHECK(visual_contains(u, ray_point(x, xi, 10)));
    CHECK_FALSE(visual_contains(u, H2Point{0, 2}));  // inside B(x, r)
    CHECK_FALSE(visual_contains(u, BoundaryPoint{H2Boundary::finite(0)}));
    CHECK_THROWS_AS(make_neighborhood(x, xi, 1, 2), UsageError);
    CHECK(neighborhood_nesting_check(x, x, xi, 3, 0.5L, 6, 200, 1));
    const auto r = locate_nesting_radius(x, H2Point{1, 1}, xi, 3, 0.5L, 200, 1, 1);
    CHECK(r.has_value());
}

TEST_CASE("geodesic witnesses") {
    const auto w = rank_one_geodesic_witness(H2Boundary::finite(-1), H2Boundary::finite(1));
    REQUIRE(w.has_value());
    CHECK(w->rank_one);
    CHECK(std::get<H2Point>(w->point).y == doctest::Approx(1));
    CHECK_FALSE(rank_one_geodesic_witness(H2Boundary::finite(1), H2Boundary::finite(1)).has_value());
    const auto e = rank_one_geodesic_witness(E2Boundary{0}, E2Boundary{kPi});
    REQUIRE(e.has_value());
    CHECK_FALSE(e->rank_one);
    CHECK_FALSE(rank_one_geodesic_witness(E2Boundary{0}, E2Boundary{1}).has_value());
}
