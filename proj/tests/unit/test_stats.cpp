#include <cmath>
#include <numeric>

#include "doctest.h"
#include "support.hpp"

#include "cat0lab/stats.hpp"

using namespace cat0lab;

namespace {

// E|Z_n| on the 4-regular tree by a direct DP over the distance to the root.
Real tree_expected_distance(std::size_t n) {
    std::vector<Real> p(n + 2, 0);
    p[0] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Real> q(n + 2, 0);
        q[1] += p[0];
        for (std::size_t d = 1; d <= k; ++d) {
            q[d + 1] += p[d] * 0.75L;
            q[d - 1] += p[d] * 0.25L;
        }
        p.swap(q);
    }
    Real e = 0;
    for (std::size_t d = 0; d < p.size(); ++d) e += d * p[d];
    return e;
}

}  // namespace

TEST_CASE("drift on the free group matches the distance DP") {
    const auto spec = testing::uniform_tree_spec();
    const DriftReport r = drift_estimate(spec, T4Point{}, 1000, 400, 11, {.threads = 4});
    const Real exact = tree_expected_distance(1000) / 1000;
    CHECK(std::fabs(r.lambda_hat - exact) < 4 * r.std_error + 1e-12);
    CHECK(std::fabs(exact - 0.5L) < 5e-3);
    CHECK(r.admissibility.certified);
    CHECK(r.per_sample_terminal.size() == 400);
}

TEST_CASE("drift is basepoint invariant and thread independent") {
    const auto spec = testing::standard_h2_spec();
    const DriftReport a = drift_estimate(spec, H2Point{0, 1}, 400, 64, 5, {.threads = 1});
    const DriftReport b = drift_estimate(spec, H2Point{0, 1}, 400, 64, 5, {.threads = 3});
    CHECK(a.per_sample_terminal == b.per_sample_terminal);
    CHECK(a.lambda_hat == b.lambda_hat);
    // the same increments from another basepoint move at most 2 d(x, y) / n away
    const H2Point y{1.5L, 0.3L};
    const DriftReport c = drift_estimate(spec, y, 400, 64, 5);
    const Real d = distance(H2Point{0, 1}, y);
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(std::fabs(a.per_sample_terminal[i] - c.per_sample_terminal[i]) <= 2 * d / 400 + 1e-9);
    }
}

TEST_CASE("drift refuses uncertified distributions") {
    const auto spec = testing::tree_spec({{'a', 0.5L}, {'b', 0.5L}});
    CHECK_THROWS_AS(drift_estimate(spec, T4Point{}, 10, 4, 1), RefusalError);
    const DriftReport r = drift_estimate(spec, T4Point{}, 10, 4, 1, {.allow_uncertified = true});
    CHECK(r.lambda_hat == doctest::Approx(1));
    CHECK_FALSE(r.admissibility.certified);
}

TEST_CASE("E2 translations have zero drift") {
    const DriftReport r = drift_estimate(testing::e2_translation_spec(), E2Point{}, 4000, 64, 2);
    // E|Z_n| ~ sqrt(pi n / 4) for the planar walk
    CHECK(r.lambda_hat < 3 * std::sqrt(kPi * 4000 / 4) / 4000);
}

TEST_CASE("horofunction drift matches distance drift") {
    const auto spec = testing::standard_h2_spec();
    DriftOptions o;
    o.xi = H2Boundary::finite(0.37L);
    o.threads = 4;
    const DriftReport r = drift_estimate(spec, H2Point{0, 1}, 2000, 64, 8, o);
    REQUIRE(r.horofunction_lambda.has_value());
    CHECK(std::fabs(*r.horofunction_lambda - r.lambda_hat) < 0.02);
}

TEST_CASE("hitting histogram against the exact free-group measure") {
    const std::map<char, Real> p{{'a', 0.4L}, {'A', 0.1L}, {'b', 0.3L}, {'B', 0.2L}};
    const testing::FreeGroupHitting oracle(p);
    const auto spec = testing::tree_spec(p);
    const BinScheme bins = default_bins(ModelSpace::T4);
    const std::size_t m = 20000;
    const HittingHistogram h = hitting_measure(spec, T4Point{}, 300, m, bins, 3, 4);
    REQUIRE(h.masses.size() == 12);
    Real total = 0;
    for (std::size_t i = 0; i < h.masses.size(); ++i) {
        const std::string w = bin_label(bins, i);
        const Real exact = oracle.cylinder(w);
        CAPTURE(w);
        CHECK(std::fabs(h.masses[i] - exact) < 4 * std::sqrt(exact * (1 - exact) / m) + 1e-12);
        total += exact;
    }
    CHECK(std::fabs(total - 1) < 1e-9);
}

TEST_CASE("uniform free-group cylinders") {
    const testing::FreeGroupHitting oracle({{'a', 0.25L}, {'A', 0.25L}, {'b', 0.25L}, {'B', 0.25L}});
    CHECK(oracle.F('a') == doctest::Approx(1.0 / 3));
    CHECK(oracle.first_letter('b') == doctest::Approx(0.25));
    CHECK(oracle.cylinder("ab") == doctest::Approx(1.0 / 12));
}

TEST_CASE("stationarity defect is small for the hitting measure and large otherwise") {
    const auto spec = testing::standard_h2_spec();
    const BinScheme bins = default_bins(ModelSpace::H2);
    const HittingHistogram h = hitting_measure(spec, H2Point{0, 1}, 200, 4000, bins, 4, 4);
    CHECK(stationarity_defect(spec, h, 64, 1) < 0.08);
    HittingHistogram point = h;
    std::fill(point.masses.begin(), point.masses.end(), 0);
    point.masses[0] = 1;
    CHECK(stationarity_defect(spec, point, 64, 1) > 0.3);
}

TEST_CASE("bins partition the boundary") {
    sampling::Engine rng(9);
    for (ModelSpace m : testing::kModels) {
        CAPTURE(to_string(m));
        const BinScheme bins = default_bins(m);
        const Point x = default_basepoint(m);
        for (std::size_t b = 0; b < bin_count(bins); ++b) {
            for (std::uint64_t c = 0; c < 5; ++c) CHECK(bin_of(bins, x, sample_in_bin(bins, x, b, 1, c)) == b);
        }
        for (int i = 0; i < 50; ++i) CHECK(bin_of(bins, x, sampling::random_boundary(m, rng)) < bin_count(bins));
    }
}

TEST_CASE("convergence profile") {
    const auto spec = testing::standard_h2_spec();
    const WalkTrace t = sample_walk(spec, H2Point{0, 1}, 2000, 6, 0, 20);
    const auto cps = linear_checkpoints(2000, 100);
    CHECK(cps.front() == 20);
    CHECK(cps.back() == 2000);
    const ConvergenceProfile p = convergence_profile(t, cps);
    for (std::size_t i = 1; i < p.cauchy_tail.size(); ++i) CHECK(p.cauchy_tail[i] <= p.cauchy_tail[i - 1]);
    CHECK(p.cauchy_tail.back() == 0);
    CHECK(tail_after(p, 1000) < 1e-2);
    CHECK(std::isinf(tail_after(p, 5000)));
}

TEST_CASE("transient cocycle series equals the horofunction along the walk") {
    sampling::Engine rng(12);
    const std::vector<StepDistribution> specs{testing::standard_h2_spec(), testing::uniform_tree_spec(),
                                              testing::e2_translation_spec()};
    for (const auto& spec : specs) {
        const Point x = default_basepoint(spec.model);
        const BoundaryPoint xi = sampling::random_boundary(spec.model, rng);
        const WalkTrace t = sample_walk(spec, x, 40, 13);
        const auto s = transient_cocycle_series(t, xi);
        REQUIRE(s.size() == 41);
        for (std::size_t k = 0; k <= 40; ++k) CHECK(std::fabs(s[k] - horofunction(xi, x, t.positions[k])) < 1e-8);
    }
}

TEST_CASE("cocycle identity") {
    sampling::Engine rng(14);
    for (ModelSpace m : testing::kModels) {
        for (int i = 0; i < 50; ++i) {
            const Isometry g1 = sampling::random_isometry(m, rng), g2 = sampling::random_isometry(m, rng);
            const BoundaryPoint xi = sampling::random_boundary(m, rng);
            CHECK(cocycle_residual(g1, g2, xi, default_basepoint(m)) < 1e-8);
        }
    }
}

TEST_CASE("horofunction gap") {
    const WalkTrace t = sample_walk(testing::uniform_tree_spec(), T4Point{}, 500, 15);
    const GapSeries g = horofunction_gap(t, words::normalize_infinite("", "ab"));
    CHECK(g.gap_series.size() == 501);
    CHECK(g.gap_series[0] == 0);
    CHECK(g.sup_gap == *std::max_element(g.gap_series.begin(), g.gap_series.end()));
    CHECK(g.sup_gap <= 2 * 500);
}

TEST_CASE("Theil-Sen slope") {
    std::vector<Real> xs(20), ys(20);
    std::iota(xs.begin(), xs.end(), Real(0));
    for (std::size_t i = 0; i < 20; ++i) ys[i] = 3 * xs[i] - 1;
    ys[7] = 1000;  // one outlier barely matters
    CHECK(theil_sen_slope(xs, ys) == doctest::Approx(3));
    CHECK(theil_sen_slope({1}, {2}) == 0);
    CHECK_THROWS_AS(theil_sen_slope({1, 2}, {1}), UsageError);
}

TEST_CASE("tracking error along a hyperbolic walk") {
    const auto spec = testing::standard_h2_spec();
    const WalkTrace t = sample_walk(spec, H2Point{0, 1}, 4000, 16, 0, 40);
    const DriftReport r = drift_estimate(spec, H2Point{0, 1}, 2000, 64, 17, {.threads = 4});
    const auto e = tracking_error(t, r.lambda_hat, {400, 4000});
    CHECK(e.back() < 0.05);
    const WalkTrace tree = sample_walk(testing::uniform_tree_spec(), T4Point{}, 4000, 18, 0, 40);
    CHECK(tracking_error(tree, 0.5L, {4000}).back() < 0.05);
}

TEST_CASE("pi-convergence for powers of a hyperbolic isometry") {
    const Isometry g = testing::standard_g();
    std::vector<Isometry> gs;
    for (long k = 1; k <= 40; ++k) gs.push_back(power(g, k));
    const Point x = H2Point{0, 1};
    const std::vector<BoundaryPoint> K{H2Boundary::finite(1), H2Boundary::finite(-3), H2Boundary::finite(0.01L)};
    const auto r = pi_convergence_check(gs, x, K, 0.01L);
    CHECK(r.holds);
    CHECK(std::get<H2Boundary>(r.forward_limit).at_infinity);
    CHECK(std::fabs(std::get<H2Boundary>(r.backward_limit).value) < 1e-9);
    CHECK(r.n0 > 1);
    CHECK(r.n0 < 40);
    CHECK_THROWS_AS(pi_convergence_check(gs, x, {H2Boundary::finite(0)}, 0.01L), DomainError);
    CHECK_THROWS_AS(pi_convergence_check({H2Isometry{}}, x, K, 0.01L), DomainError);
    CHECK_THROWS_AS(pi_convergence_check(gs, x, K, 0), UsageError);
}

TEST_CASE("pi-convergence fails for flat translations") {
    std::vector<Isometry> gs;
    for (long k = 1; k <= 20; ++k) gs.push_back(E2Isometry{0, Real(k), 0});
    // the Tits ball of radius pi about the backward limit is everything but its antipode
    CHECK_THROWS_AS(pi_convergence_check(gs, E2Point{}, {E2Boundary{1}}, 0.1L), DomainError);
    const auto r = pi_convergence_check(gs, E2Point{}, {E2Boundary{0}}, 0.1L);
    CHECK(r.holds);
    CHECK(r.n0 == 1);
}

TEST_CASE("Dirac concentration") {
    const auto spec = testing::standard_h2_spec();
    std::vector<BoundaryPoint> a, b;
    for (int i = 0; i < 6; ++i) a.push_back(H2Boundary::finite(-2 + 0.5L * i));
    b.push_back(H2Boundary::finite(5));
    b.push_back(H2Boundary::finite(7));
    const DiracReport r = dirac_concentration(spec, H2Point{0, 1}, a, b, 2000, 19, {10, 100, 1000, 2000});
    CHECK(r.hypotheses_ok);
    CHECK(r.spread_a.back() < 1e-3);
    CHECK(r.spread_b.back() < 1e-3);
    CHECK(r.cross_spread.back() < 1e-3);
    CHECK_THROWS_AS(dirac_concentration(spec, H2Point{0, 1}, {a[0]}, b, 10, 1, {5}), UsageError);
    CHECK_THROWS_AS(dirac_concentration(spec, H2Point{0, 1}, a, b, 10, 1, {11}), UsageError);
}
