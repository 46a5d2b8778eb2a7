#include "cat0lab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cat0lab/geometry.hpp"
#include "cat0lab/sampling.hpp"
#include "cat0lab/words.hpp"
#include "h2.hpp"

namespace cat0lab {

Real horofunction(const BoundaryPoint& xi_in, const Point& x, const Point& z) {
    require_same_model(x, z, "horofunction");
    require_same_model(x, xi_in, "horofunction");
    const BoundaryPoint xi = normalize(xi_in);
    switch (model_of(x)) {
        case ModelSpace::E2: {
            const Real a = std::get<E2Boundary>(xi).angle;
            const auto& p = std::get<E2Point>(x);
            const auto& q = std::get<E2Point>(z);
            return (p.x - q.x) * std::cos(a) + (p.y - q.y) * std::sin(a);
        }
        case ModelSpace::H2:
            return detail::h2::busemann(std::get<H2Boundary>(xi), std::get<H2Point>(x), std::get<H2Point>(z));
        case ModelSpace::T4: {
            const auto& b = std::get<T4Boundary>(xi);
            auto level = [&b](const std::string& w) {
                return static_cast<Real>(w.size()) - 2 * static_cast<Real>(words::common_prefix(w, b));
            };
            return level(std::get<T4Point>(z).word) - level(std::get<T4Point>(x).word);
        }
        case ModelSpace::H2xR: {
            const auto& b = std::get<H2xRBoundary>(xi);
            const auto& p = std::get<H2xRPoint>(x);
            const auto& q = std::get<H2xRPoint>(z);
            Real h = std::sin(b.alpha) * (p.height - q.height);
            if (b.xi) h += std::cos(b.alpha) * detail::h2::busemann(*b.xi, p.base, q.base);
            return h;
        }
    }
    throw UsageError("horofunction: bad model");
}

Real horofunction_limit_oracle(const BoundaryPoint& xi, const Point& x, const Point& z, Real t) {
    return distance(ray_point(x, xi, t), z) - t;
}

VisualNeighborhood make_neighborhood(Point base, BoundaryPoint target, Real r, Real eps) {
    require_same_model(base, target, "make_neighborhood");
    if (!(eps > 0)) throw UsageError("visual neighborhood: eps must be positive");
    if (!(r > eps)) throw UsageError("visual neighborhood: r must exceed eps");
    return {std::move(base), normalize(target), r, eps};
}

bool visual_contains(const VisualNeighborhood& u, const Point& target) {
    require_same_model(u.base, target, "visual_contains");
    if (!(distance(u.base, target) > u.r)) return false;
    return distance(project_to_ball(u.base, u.r, target), ray_point(u.base, u.target, u.r)) < u.eps;
}

bool visual_contains(const VisualNeighborhood& u, const BoundaryPoint& target) {
    require_same_model(u.base, target, "visual_contains");
    return distance(ray_point(u.base, target, u.r), ray_point(u.base, u.target, u.r)) < u.eps;
}

namespace {

using Sample = std::variant<Point, BoundaryPoint>;

// Candidate members of U(base, xi, radius, eps): rays near the one toward xi,
// cut beyond `radius`, plus their endpoints. Callers filter by membership.
Sample sample_cone(const Point& base, const BoundaryPoint& xi, Real radius, Real eps, sampling::Engine& rng) {
    const bool boundary = sampling::uniform(rng, 0, 1) < 0.25;
    const Real t = radius * (1 + 2 * sampling::uniform(rng, 1e-6L, 1));
    switch (model_of(base)) {
        case ModelSpace::E2:
        case ModelSpace::H2: {
            const Real half = model_of(base) == ModelSpace::E2
                                  ? std::asin(std::min(Real(1), eps / (2 * radius)))
                                  : std::asin(std::min(Real(1), std::sinh(eps / 2) / std::sinh(radius)));
            const Real width = 3 * half;
            const Real angle = visual_angle(base, xi) + sampling::uniform(rng, -width, width);
            const BoundaryPoint zeta = boundary_at_visual_angle(base, angle);
            if (boundary) return zeta;
            return ray_point(base, zeta, t);
        }
        case ModelSpace::T4: {
            const auto steps = static_cast<std::size_t>(std::ceil(radius));
            const auto& ray = std::get<T4Point>(ray_point(base, xi, static_cast<Real>(steps))).word;
            const auto extra = static_cast<std::size_t>(sampling::uniform(rng, 1, static_cast<Real>(steps) + 2));
            std::string w = sampling::extend_word(rng, ray, extra);
            if (boundary) return BoundaryPoint{words::normalize_infinite(w, std::string(1, w.back()))};
            return Point{T4Point{std::move(w)}};
        }
        case ModelSpace::H2xR: {
            const auto& b = std::get<H2xRBoundary>(xi);
            const auto& p = std::get<H2xRPoint>(base);
            const Real slope_width = 3 * eps / radius;
            Real alpha = std::clamp(b.alpha + sampling::uniform(rng, -slope_width, slope_width), -kPi / 2 + 1e-12L,
                                    kPi / 2 - 1e-12L);
            Real angle = 0;
            if (b.xi) {
                const Real half = std::asin(std::min(Real(1), std::sinh(eps / 2) / std::sinh(radius)));
                angle = 2 * detail::h2::boundary_theta(p.base, *b.xi) + sampling::uniform(rng, -3 * half, 3 * half);
            } else {
                angle = sampling::uniform(rng, 0, 2 * kPi);
            }
            const H2Boundary h2xi = detail::h2::boundary_from_theta(p.base, angle / 2);
            const H2xRBoundary zeta{h2xi, alpha};
            if (boundary) return BoundaryPoint{zeta};
            return ray_point(base, zeta, t);
        }
    }
    throw UsageError("sample_cone: bad model");
}

}  // namespace

bool neighborhood_nesting_check(const Point& x, const Point& x2, const BoundaryPoint& xi, Real r, Real eps,
                                Real outer_r, std::size_t samples, std::uint64_t seed) {
    if (!(outer_r > r)) throw UsageError("neighborhood_nesting_check: outer radius must exceed r");
    const VisualNeighborhood inner = make_neighborhood(x, xi, r, eps);
    const VisualNeighborhood outer = make_neighborhood(x2, xi, outer_r, eps / 3);
    sampling::Engine rng(seed);
    std::size_t accepted = 0;
    const std::size_t max_attempts = 50 * std::max<std::size_t>(samples, 1);
    for (std::size_t attempt = 0; attempt < max_attempts && accepted < samples; ++attempt) {
        const Sample s = sample_cone(x2, xi, outer_r, eps / 3, rng);
        const bool member = std::visit([&](const auto& v) { return visual_contains(outer, v); }, s);
        if (!member) continue;
        ++accepted;
        const bool inside = std::visit([&](const auto& v) { return visual_contains(inner, v); }, s);
        if (!inside) return false;
    }
    return true;
}

std::optional<Real> locate_nesting_radius(const Point& x, const Point& x2, const BoundaryPoint& xi, Real r, Real eps,
                                          std::size_t samples, std::uint64_t seed, Real start, int max_doublings) {
    Real outer = std::max(start, r * 1.01L);
    for (int i = 0; i <= max_doublings; ++i, outer *= 2) {
        if (neighborhood_nesting_check(x, x2, xi, r, eps, outer, samples, seed)) return outer;
    }
    return std::nullopt;
}

std::vector<Real> default_angle_grid() { return {1, 2, 4, 8, 16, 32, 64}; }

AngleEstimate angle_at_infinity(const Point& x, const BoundaryPoint& xi, const BoundaryPoint& eta,
                                const std::vector<Real>& t_grid, Real tol) {
    if (t_grid.empty()) throw UsageError("angle_at_infinity: empty grid");
    AngleEstimate out;
    if (approx_equal(xi, eta, tol)) {
        out.values.assign(t_grid.size(), 0);
        return out;
    }
    for (const Real t : t_grid) {
        const Real s = model_of(x) == ModelSpace::T4 ? std::max(Real(1), std::round(t)) : t;
        out.values.push_back(comparison_angle(x, ray_point(x, xi, s), ray_point(x, eta, s), tol));
    }
    for (std::size_t i = 1; i < out.values.size(); ++i) {
        out.monotonicity_defect = std::max(out.monotonicity_defect, out.values[i - 1] - out.values[i]);
    }
    out.angle = out.values.back();
    return out;
}

TitsValue tits_distance(const BoundaryPoint& xi_in, const BoundaryPoint& eta_in, Real tol) {
    require_same_model(xi_in, eta_in, "tits_distance");
    const BoundaryPoint xi = normalize(xi_in, tol);
    const BoundaryPoint eta = normalize(eta_in, tol);
    switch (model_of(xi)) {
        case ModelSpace::E2: {
            Real diff = std::fabs(std::get<E2Boundary>(xi).angle - std::get<E2Boundary>(eta).angle);
            diff = std::min(diff, 2 * kPi - diff);
            return {diff, false};
        }
        case ModelSpace::H2:
        case ModelSpace::T4:
            if (approx_equal(xi, eta, tol)) return {0, false};
            return {std::numeric_limits<Real>::infinity(), true};
        case ModelSpace::H2xR: {
            const auto& a = std::get<H2xRBoundary>(xi);
            const auto& b = std::get<H2xRBoundary>(eta);
            const bool same_line = !a.xi || !b.xi || approx_equal(H2xRBoundary{a.xi, 0}, H2xRBoundary{b.xi, 0}, tol);
            if (same_line) return {std::fabs(a.alpha - b.alpha), false};
            // Opposite ends of a geodesic of H2: the flat (geodesic) x R contains
            // both rays, with unit directions (cos a, sin a) and (-cos b, sin b).
            return {kPi - std::fabs(a.alpha + b.alpha), false};
        }
    }
    throw UsageError("tits_distance: bad model");
}

bool tits_ball_is_trivial(const BoundaryPoint& xi) {
    const ModelSpace model = model_of(xi);
    return model == ModelSpace::H2 || model == ModelSpace::T4;
}

std::size_t tree_gromov_product(const std::string& x, const T4Boundary& xi, const T4Boundary& eta) {
    if (xi.prefix == eta.prefix && xi.period == eta.period) return std::numeric_limits<std::size_t>::max();
    const std::size_t lx = words::common_prefix(x, xi);
    const std::size_t ly = words::common_prefix(x, eta);
    if (lx != ly) return x.size() - std::max(lx, ly);
    // Two distinct eventually periodic words differ within this many letters.
    const std::size_t bound =
        std::max(xi.prefix.size(), eta.prefix.size()) + xi.period.size() + eta.period.size() + 1;
    std::size_t common = 0;
    while (common < bound && words::letter_at(xi, common) == words::letter_at(eta, common)) ++common;
    return (x.size() - lx) + (common - lx);
}

Real boundary_metric(const Point& x, const BoundaryPoint& xi, const BoundaryPoint& eta, Real r0) {
    require_same_model(x, xi, "boundary_metric");
    require_same_model(xi, eta, "boundary_metric");
    if (model_of(x) == ModelSpace::T4) {
        const std::size_t g = tree_gromov_product(std::get<T4Point>(x).word, std::get<T4Boundary>(normalize(xi)),
                                                  std::get<T4Boundary>(normalize(eta)));
        if (g == std::numeric_limits<std::size_t>::max()) return 0;
        return 2 * std::exp(-static_cast<Real>(g));
    }
    return distance(ray_point(x, xi, r0), ray_point(x, eta, r0));
}

namespace {

H2Point h2_geodesic_point(const H2Boundary& a, const H2Boundary& b) {
    if (a.at_infinity) return {b.value, 1};
    if (b.at_infinity) return {a.value, 1};
    return {(a.value + b.value) / 2, std::fabs(a.value - b.value) / 2};
}

}  // namespace

std::optional<GeodesicWitness> rank_one_geodesic_witness(const BoundaryPoint& xi_in, const BoundaryPoint& eta_in,
                                                         Real tol) {
    require_same_model(xi_in, eta_in, "rank_one_geodesic_witness");
    const BoundaryPoint xi = normalize(xi_in, tol);
    const BoundaryPoint eta = normalize(eta_in, tol);
    switch (model_of(xi)) {
        case ModelSpace::H2: {
            if (approx_equal(xi, eta, tol)) return std::nullopt;
            const H2Point p = h2_geodesic_point(std::get<H2Boundary>(xi), std::get<H2Boundary>(eta));
            return GeodesicWitness{p, xi, eta, true};
        }
        case ModelSpace::T4: {
            if (approx_equal(xi, eta, tol)) return std::nullopt;
            const std::size_t confluence = tree_gromov_product("", std::get<T4Boundary>(xi), std::get<T4Boundary>(eta));
            return GeodesicWitness{T4Point{words::take(std::get<T4Boundary>(xi), confluence)}, xi, eta, true};
        }
        case ModelSpace::E2:
        case ModelSpace::H2xR: {
            const TitsValue d = tits_distance(xi, eta, tol);
            if (d.value < kPi - tol) return std::nullopt;
            if (model_of(xi) == ModelSpace::E2) return GeodesicWitness{E2Point{0, 0}, xi, eta, false};
            const auto& a = std::get<H2xRBoundary>(xi);
            const auto& b = std::get<H2xRBoundary>(eta);
            const H2Point base = (a.xi && b.xi) ? h2_geodesic_point(*a.xi, *b.xi) : H2Point{0, 1};
            return GeodesicWitness{H2xRPoint{base, 0}, xi, eta, false};
        }
    }
    throw UsageError("rank_one_geodesic_witness: bad model");
}

}  // namespace cat0lab
