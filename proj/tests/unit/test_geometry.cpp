#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace cat0lab;
using testing::kModels;

TEST_CASE("H2 distance agrees with the arc length of the geodesic") {
    // i to 1 + i lies on the circle |z - 1/2| = sqrt(5)/2
    const Real r = std::sqrt(Real(5)) / 2;
    const Real t0 = std::atan2(Real(1), Real(-0.5)), t1 = std::atan2(Real(1), Real(0.5));
    const Real len = testing::hyperbolic_length(
        [&](Real t) { return std::pair<Real, Real>{0.5L + r * std::cos(t), r * std::sin(t)}; }, t1, t0);
    const Real d = distance(H2Point{0, 1}, H2Point{1, 1});
    CHECK(std::fabs(len - d) < 1e-8);
    CHECK(std::fabs(d - std::acosh(Real(1.5))) < 1e-15);
    CHECK(std::fabs(d - 0.9624236501192069L) < 1e-15);

    // vertical segment from i to 2i
    const Real vertical = testing::hyperbolic_length([](Real t) { return std::pair<Real, Real>{0, t}; }, 1, 2);
    CHECK(std::fabs(vertical - std::log(Real(2))) < 1e-9);
}

TEST_CASE("metric axioms on random samples") {
    sampling::Engine rng(11);
    for (ModelSpace m : kModels) {
        CAPTURE(to_string(m));
        for (int i = 0; i < 500; ++i) {
            const Point p = sampling::random_point(m, rng), q = sampling::random_point(m, rng),
                        z = sampling::random_point(m, rng);
            CHECK(distance(p, p) == doctest::Approx(0));
            CHECK(std::fabs(distance(p, q) - distance(q, p)) < 1e-12);
            CHECK(distance(p, q) <= distance(p, z) + distance(z, q) + 1e-12);
        }
    }
}

TEST_CASE("T4 distance is the reduced length of x^-1 y") {
    CHECK(distance(T4Point{"ab"}, T4Point{"aB"}) == 2);
    CHECK(distance(T4Point{""}, T4Point{"abAB"}) == 4);
    CHECK(distance(T4Point{"a"}, T4Point{"ab"}) == 1);
}

TEST_CASE("geodesic_point splits the distance") {
    sampling::Engine rng(5);
    for (ModelSpace m : kModels) {
        CAPTURE(to_string(m));
        for (int i = 0; i < 200; ++i) {
            const Point p = sampling::random_point(m, rng), q = sampling::random_point(m, rng);
            const Real d = distance(p, q);
            const Real t = m == ModelSpace::T4 ? std::floor(d / 2) : d * sampling::uniform(rng, 0, 1);
            const Point c = geodesic_point(p, q, t);
            CHECK(std::fabs(distance(p, c) - t) < 1e-9);
            CHECK(std::fabs(distance(c, q) - (d - t)) < 1e-9);
        }
    }
    CHECK_THROWS_AS(geodesic_point(T4Point{""}, T4Point{"ab"}, 0.5L), UsageError);
}

TEST_CASE("ray_point and direction are inverse to each other") {
    sampling::Engine rng(8);
    for (ModelSpace m : kModels) {
        CAPTURE(to_string(m));
        for (int i = 0; i < 200; ++i) {
            const Point x = sampling::random_point(m, rng);
            const BoundaryPoint xi = sampling::random_boundary(m, rng);
            const Real t = m == ModelSpace::T4 ? 5 : sampling::uniform(rng, 0.5L, 6);
            const Point p = ray_point(x, xi, t);
            CHECK(std::fabs(distance(x, p) - t) < 1e-9);
            if (m != ModelSpace::T4) CHECK(approx_equal(direction(x, p), xi, 1e-7L));
        }
    }
}

TEST_CASE("H2 rays stay accurate far out") {
    const H2Point x{0.3L, 2};
    for (Real t : {Real(10), Real(100), Real(1000), Real(5000)}) {
        const Point p = ray_point(Point{x}, BoundaryPoint{H2Boundary::finite(1)}, t);
        CHECK(std::fabs(distance(Point{x}, p) - t) < 1e-9 * t);
        CHECK(std::get<H2Point>(p).y > 0);
    }
}

TEST_CASE("comparison angle sanity") {
    const Point x = E2Point{0, 0};
    CHECK(comparison_angle(x, E2Point{1, 0}, E2Point{0, 2}) == doctest::Approx(kPi / 2));
    CHECK_THROWS_AS(comparison_angle(x, x, E2Point{1, 1}), UsageError);
    // H2 triangles are thinner, so the comparison angle at i exceeds the Riemannian one
    const Point i = H2Point{0, 1};
    const Point a = ray_point(i, boundary_at_visual_angle(i, 0), 2);
    const Point b = ray_point(i, boundary_at_visual_angle(i, kPi / 2), 2);
    CHECK(comparison_angle(i, a, b) > kPi / 2);
}

TEST_CASE("validation rejects malformed points") {
    CHECK_THROWS_AS(validate(H2Point{0, -1}), ValidationError);
    CHECK_THROWS_AS(validate(H2Point{0, 0}), ValidationError);
    CHECK_THROWS_AS(validate(T4Point{"aA"}), ValidationError);
    CHECK_THROWS_AS(validate(E2Point{NAN, 0}), ValidationError);
    CHECK_NOTHROW(validate(H2xRPoint{{0, 1}, -3}));
}

TEST_CASE("H2xR boundary normalization sends vertical slopes to the poles") {
    const BoundaryPoint up = normalize(H2xRBoundary{std::nullopt, kPi / 2});
    CHECK_FALSE(std::get<H2xRBoundary>(up).xi.has_value());
    const BoundaryPoint almost = normalize(H2xRBoundary{H2Boundary::finite(2), kPi / 2 - 1e-12L});
    CHECK_FALSE(std::get<H2xRBoundary>(almost).xi.has_value());
    CHECK_THROWS_AS(normalize(H2xRBoundary{std::nullopt, 0.3L}), ValidationError);
}
