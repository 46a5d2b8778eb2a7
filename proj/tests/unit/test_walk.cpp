#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace cat0lab;

TEST_CASE("distribution validation") {
    StepDistribution bad{ModelSpace::T4, {{T4Isometry{"a"}, 0.5L}, {T4Isometry{"b"}, 0.4L}}};
    CHECK_THROWS_AS(validated(bad), ValidationError);
    StepDistribution negative{ModelSpace::T4, {{T4Isometry{"a"}, 1.5L}, {T4Isometry{"b"}, -0.5L}}};
    CHECK_THROWS_AS(validated(negative), ValidationError);
    StepDistribution mixed{ModelSpace::T4, {{T4Isometry{"a"}, 0.5L}, {E2Isometry{}, 0.5L}}};
    CHECK_THROWS_AS(validated(mixed), ValidationError);
    StepDistribution close{ModelSpace::T4, {{T4Isometry{"a"}, 0.5L}, {T4Isometry{"b"}, 0.5L + 1e-14L}}};
    CHECK_NOTHROW(validated(close));
}

TEST_CASE("admissibility at bounded depth") {
    CHECK(validate_distribution(testing::uniform_tree_spec(), 1).certified);
    const auto semigroup = testing::tree_spec({{'a', 0.5L}, {'b', 0.5L}});
    const auto r = validate_distribution(semigroup, 10);
    CHECK_FALSE(r.certified);
    CHECK(r.elements_reached == 2046);
    CHECK(validate_distribution(testing::standard_h2_spec(), 1).certified);
    // a^3 = identity-free group; with atom a^-1 only reachable through products
    const auto cyclic = uniform_distribution({E2Isometry{2 * kPi / 3, 0, 0}});
    CHECK_FALSE(validate_distribution(cyclic, 1).certified);
    CHECK(validate_distribution(cyclic, 2).certified);
}

TEST_CASE("sample_walk basics") {
    const auto spec = testing::uniform_tree_spec();
    const WalkTrace empty = sample_walk(spec, T4Point{}, 0, 1);
    REQUIRE(empty.positions.size() == 1);
    CHECK(std::get<T4Point>(empty.positions[0]).word.empty());

    const WalkTrace a = sample_walk(spec, T4Point{"b"}, 300, 42);
    const WalkTrace b = sample_walk(spec, T4Point{"b"}, 300, 42);
    CHECK(a.increments == b.increments);
    for (std::size_t k = 0; k < a.positions.size(); ++k) {
        CHECK(std::get<T4Point>(a.positions[k]).word == std::get<T4Point>(b.positions[k]).word);
    }
    CHECK(std::get<T4Point>(a.positions[0]).word == "b");
    CHECK(sample_walk(spec, T4Point{}, 300, 43).increments != a.increments);

    // products are left products and positions are Z_k x
    const auto prods = all_products(a);
    for (std::size_t k = 0; k <= 300; ++k) {
        CHECK(std::get<T4Isometry>(prods[k]).word == std::get<T4Isometry>(a.products[k]).word);
        CHECK(distance(cat0lab::apply(prods[k], T4Point{"b"}), a.positions[k]) == 0);
    }
}

TEST_CASE("thinned traces keep every stride-th step and the last one") {
    const WalkTrace t = sample_walk(testing::standard_h2_spec(), H2Point{0, 1}, 105, 3, 0, 10);
    CHECK(t.steps.front() == 0);
    CHECK(t.steps.back() == 105);
    CHECK(t.steps.size() == 12);
    const WalkTrace full = sample_walk(testing::standard_h2_spec(), H2Point{0, 1}, 105, 3);
    CHECK(distance(t.positions.back(), full.positions.back()) < 1e-9);
}

TEST_CASE("empirical atom frequencies match the law") {
    const auto spec = testing::uniform_tree_spec();
    const WalkTrace t = sample_walk(spec, T4Point{}, 100000, 1, 0, 100000);
    std::vector<Real> count(4, 0);
    for (auto i : t.increments) count[i] += 1;
    const Real sigma = std::sqrt(100000 * 0.25L * 0.75L);
    for (Real c : count) CHECK(std::fabs(c - 25000) < 3 * sigma);
}

TEST_CASE("increments are isometry invariant") {
    const auto spec = testing::standard_h2_spec();
    const Point x = H2Point{0.2L, 1.5L};
    // short: far out the half-plane coordinates lose relative precision
    const WalkTrace t = sample_walk(spec, x, 25, 5);
    for (std::size_t k = 0; k < 25; ++k) {
        const Real step = distance(t.positions[k], t.positions[k + 1]);
        const Real atom = distance(x, cat0lab::apply(spec.atoms[t.increments[k]].g, x));
        CHECK(std::fabs(step - atom) < 1e-6);
    }
    const WalkTrace tree = sample_walk(testing::uniform_tree_spec(), T4Point{"ab"}, 500, 5);
    for (std::size_t k = 0; k < 500; ++k) {
        const Real d = distance(tree.positions[k], tree.positions[k + 1]);
        CHECK((d == 3 || d == 5));  // |B A w a b| for w in aAbB
    }
}

TEST_CASE("inverse walk positions") {
    const Isometry g = H2Isometry{2, 0, 0, 0.5L};
    const auto spec = uniform_distribution({g});
    const Point x = H2Point{0.5L, 1};
    const WalkTrace t = sample_walk(spec, x, 8, 1);
    const auto back = inverse_walk_positions(t);
    REQUIRE(back.size() == 9);
    for (long k = 0; k <= 8; ++k) CHECK(distance(back[k], cat0lab::apply(power(g, -k), x)) < 1e-9);

    const WalkTrace w = sample_walk(testing::uniform_tree_spec(), T4Point{}, 400, 9);
    const auto inv = inverse_walk_positions(w);
    for (std::size_t k = 0; k <= 400; ++k) CHECK(distance(inv[k], T4Point{}) == distance(T4Point{}, w.positions[k]));
    CHECK(inverse_walk_positions(sample_walk(spec, x, 0, 1)).size() == 1);
}

TEST_CASE("pushforward of a boundary measure") {
    const std::vector<BoundaryPoint> pts{H2Boundary::finite(0), H2Boundary::finite(1), H2Boundary::infinity()};
    const auto id = pushforward_atoms(uniform_distribution({H2Isometry{}}), pts);
    REQUIRE(id.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(approx_equal(id[i].first, pts[i]));
        CHECK(id[i].second == doctest::Approx(1.0 / 3));
    }
    const Isometry g = H2Isometry{2, 0, 0, 0.5L};
    const auto one = pushforward_atoms(uniform_distribution({g}), {H2Boundary::finite(1)});
    REQUIRE(one.size() == 1);
    CHECK(std::get<H2Boundary>(one[0].first).value == doctest::Approx(4));
    CHECK(one[0].second == 1);
    const auto six = pushforward_atoms(uniform_distribution({g, inverse(g)}), pts);
    Real total = 0;
    for (const auto& [xi, p] : six) total += p;
    CHECK(six.size() == 6);
    CHECK(total == doctest::Approx(1));
    CHECK_THROWS_AS(pushforward_atoms(uniform_distribution({g}), {E2Boundary{0}}), UsageError);
}

TEST_CASE("expected distance is subadditive") {
    const auto spec = testing::standard_h2_spec();
    const Point x = H2Point{0, 1};
    auto stats = [&](std::size_t n) {
        std::vector<Real> d;
        for (std::size_t p = 0; p < 400; ++p) d.push_back(distance(x, sample_walk(spec, x, n, 77, p, n).positions.back()));
        const Real m = testing::mean(d);
        Real ss = 0;
        for (Real v : d) ss += (v - m) * (v - m);
        return std::pair{m, std::sqrt(ss / (d.size() - 1) / d.size())};
    };
    const auto [e50, s50] = stats(50);
    const auto [e100, s100] = stats(100);
    const auto [e150, s150] = stats(150);
    const auto [e200, s200] = stats(200);
    CHECK(e100 <= 2 * e50 + 3 * std::hypot(s100, 2 * s50));
    CHECK(e150 <= e100 + e50 + 3 * std::hypot(s150, s100, s50));
    CHECK(e200 <= 2 * e100 + 3 * std::hypot(s200, 2 * s100));
}

TEST_CASE("counter generator is order independent") {
    const auto spec = testing::uniform_tree_spec();
    std::vector<std::uint32_t> forward, backward(50);
    for (std::size_t k = 0; k < 50; ++k) forward.push_back(draw_atom(spec, 5, 3, k));
    for (std::size_t k = 50; k-- > 0;) backward[k] = draw_atom(spec, 5, 3, k);
    CHECK(forward == backward);
    const WalkTrace t = sample_walk(spec, T4Point{}, 50, 5, 3);
    CHECK(std::vector<std::uint32_t>(t.increments.begin(), t.increments.end()) == forward);
}
