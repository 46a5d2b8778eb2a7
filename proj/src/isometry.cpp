#include "cat0lab/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cat0lab/boundary.hpp"
#include "cat0lab/geometry.hpp"
#include "cat0lab/sampling.hpp"
#include "cat0lab/words.hpp"
#include "h2.hpp"

namespace cat0lab {

namespace {

constexpr Real kTwoPi = 2 * kPi;

Real wrap_angle(Real a) {
    Real t = std::fmod(a, kTwoPi);
    if (t < 0) t += kTwoPi;
    if (t >= kTwoPi) t -= kTwoPi;
    return t;
}

Real angle_gap(Real a) {
    const Real w = wrap_angle(a);
    return std::min(w, kTwoPi - w);
}

H2Isometry normalize_matrix(const H2Isometry& m) {
    const Real det = m.a * m.d - m.b * m.c;
    if (!std::isfinite(det) || !(det > 0)) throw ValidationError("H2 isometry: determinant must be positive");
    if (std::fabs(det - 1) > 1e-6L) throw ValidationError("H2 isometry: determinant must be 1");
    const Real s = 1 / std::sqrt(det);
    return detail::h2::sign_normalized({m.a * s, m.b * s, m.c * s, m.d * s});
}

IsometryClass classify_h2(const H2Isometry& m, Real tol) {
    const Real scale = std::max({Real(1), std::fabs(m.a), std::fabs(m.b), std::fabs(m.c), std::fabs(m.d)});
    if (std::fabs(m.b) <= tol * scale && std::fabs(m.c) <= tol * scale && std::fabs(m.a - m.d) <= tol * scale) {
        return {IsometryKind::identity, 0};
    }
    const Real tr = std::fabs(detail::h2::trace(m));
    if (tr < 2 - tol) return {IsometryKind::elliptic, 0};
    if (tr <= 2 + tol) return {IsometryKind::parabolic, 0};
    return {IsometryKind::axial, 2 * std::acosh(tr / 2)};
}

// Fixed points of an axial H2 element as (repelling, attracting), from the
// stable root pair of c z^2 + (d - a) z - b = 0.
std::pair<H2Boundary, H2Boundary> h2_fixed_points(const H2Isometry& m) {
    const Real qa = m.c;
    const Real qb = m.d - m.a;
    const Real qc = -m.b;
    const Real tr = detail::h2::trace(m);
    const Real disc = std::sqrt(std::max(Real(0), (tr - 2) * (tr + 2)));
    const Real q = -(qb + std::copysign(disc, qb)) / 2;
    const H2Boundary r1 = qa == 0 ? H2Boundary::infinity() : H2Boundary::finite(q / qa);
    const H2Boundary r2 = q == 0 ? H2Boundary::infinity() : H2Boundary::finite(qc / q);
    auto attracting = [&](const H2Boundary& z) {
        if (z.at_infinity) return std::fabs(m.a) > std::fabs(m.d);
        return std::fabs(m.c * z.value + m.d) > 1;
    };
    if (attracting(r1)) return {r2, r1};
    return {r1, r2};
}

H2Point h2_elliptic_fixed_point(const H2Isometry& m) {
    const Real tr = detail::h2::trace(m);
    const Real root = std::sqrt(std::max(Real(0), 4 - tr * tr));
    return {(m.a - m.d) / (2 * m.c), root / (2 * std::fabs(m.c))};
}

}  // namespace

std::string_view to_string(IsometryKind kind) {
    switch (kind) {
        case IsometryKind::identity: return "identity";
        case IsometryKind::elliptic: return "elliptic";
        case IsometryKind::parabolic: return "parabolic";
        case IsometryKind::axial: return "axial";
    }
    return "?";
}

Isometry normalize(const Isometry& g, Real /*tol*/) {
    return std::visit(
        [](const auto& v) -> Isometry {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, E2Isometry>) {
                if (!std::isfinite(v.angle) || !std::isfinite(v.tx) || !std::isfinite(v.ty)) {
                    throw ValidationError("E2 isometry: non-finite payload");
                }
                return E2Isometry{wrap_angle(v.angle), v.tx, v.ty};
            } else if constexpr (std::is_same_v<T, H2Isometry>) {
                return normalize_matrix(v);
            } else if constexpr (std::is_same_v<T, T4Isometry>) {
                if (!words::is_reduced(v.word)) throw ValidationError("T4 isometry: word '" + v.word + "' is not reduced");
                return v;
            } else {
                if (!std::isfinite(v.shift)) throw ValidationError("H2xR isometry: non-finite shift");
                return H2xRIsometry{normalize_matrix(v.base), v.shift};
            }
        },
        g);
}

Point apply(const Isometry& g, const Point& p) {
    require_same_model(g, p, "apply");
    switch (model_of(g)) {
        case ModelSpace::E2: {
            const auto& m = std::get<E2Isometry>(g);
            const auto& q = std::get<E2Point>(p);
            const Real c = std::cos(m.angle);
            const Real s = std::sin(m.angle);
            return E2Point{c * q.x - s * q.y + m.tx, s * q.x + c * q.y + m.ty};
        }
        case ModelSpace::H2:
            return detail::h2::apply(std::get<H2Isometry>(g), std::get<H2Point>(p));
        case ModelSpace::T4:
            return T4Point{words::multiply(std::get<T4Isometry>(g).word, std::get<T4Point>(p).word)};
        case ModelSpace::H2xR: {
            const auto& m = std::get<H2xRIsometry>(g);
            const auto& q = std::get<H2xRPoint>(p);
            return H2xRPoint{detail::h2::apply(m.base, q.base), q.height + m.shift};
        }
    }
    throw UsageError("apply: bad model");
}

BoundaryPoint apply_boundary(const Isometry& g, const BoundaryPoint& xi) {
    require_same_model(g, xi, "apply_boundary");
    switch (model_of(g)) {
        case ModelSpace::E2:
            return E2Boundary{wrap_angle(std::get<E2Boundary>(xi).angle + std::get<E2Isometry>(g).angle)};
        case ModelSpace::H2:
            return detail::h2::apply(std::get<H2Isometry>(g), std::get<H2Boundary>(xi));
        case ModelSpace::T4:
            return words::multiply(std::get<T4Isometry>(g).word, std::get<T4Boundary>(xi));
        case ModelSpace::H2xR: {
            const auto& m = std::get<H2xRIsometry>(g);
            H2xRBoundary out = std::get<H2xRBoundary>(xi);
            if (out.xi) out.xi = detail::h2::apply(m.base, *out.xi);
            return out;
        }
    }
    throw UsageError("apply_boundary: bad model");
}

Isometry compose(const Isometry& g, const Isometry& h) {
    require_same_model(g, h, "compose");
    switch (model_of(g)) {
        case ModelSpace::E2: {
            const auto& a = std::get<E2Isometry>(g);
            const auto& b = std::get<E2Isometry>(h);
            const Real c = std::cos(a.angle);
            const Real s = std::sin(a.angle);
            return E2Isometry{wrap_angle(a.angle + b.angle), c * b.tx - s * b.ty + a.tx, s * b.tx + c * b.ty + a.ty};
        }
        case ModelSpace::H2:
            return detail::h2::sign_normalized(
                detail::h2::multiply(std::get<H2Isometry>(g), std::get<H2Isometry>(h)));
        case ModelSpace::T4:
            return T4Isometry{words::multiply(std::get<T4Isometry>(g).word, std::get<T4Isometry>(h).word)};
        case ModelSpace::H2xR: {
            const auto& a = std::get<H2xRIsometry>(g);
            const auto& b = std::get<H2xRIsometry>(h);
            return H2xRIsometry{detail::h2::sign_normalized(detail::h2::multiply(a.base, b.base)), a.shift + b.shift};
        }
    }
    throw UsageError("compose: bad model");
}

Isometry inverse(const Isometry& g) {
    switch (model_of(g)) {
        case ModelSpace::E2: {
            const auto& a = std::get<E2Isometry>(g);
            const Real c = std::cos(a.angle);
            const Real s = std::sin(a.angle);
            // R^-1 (p - v) = R(-angle) p - R(-angle) v
            return E2Isometry{wrap_angle(-a.angle), -(c * a.tx + s * a.ty), -(-s * a.tx + c * a.ty)};
        }
        case ModelSpace::H2:
            return detail::h2::sign_normalized(detail::h2::inverse(std::get<H2Isometry>(g)));
        case ModelSpace::T4:
            return T4Isometry{words::inverse(std::get<T4Isometry>(g).word)};
        case ModelSpace::H2xR: {
            const auto& a = std::get<H2xRIsometry>(g);
            return H2xRIsometry{detail::h2::sign_normalized(detail::h2::inverse(a.base)), -a.shift};
        }
    }
    throw UsageError("inverse: bad model");
}

Isometry power(const Isometry& g, long k) {
    Isometry base = k < 0 ? inverse(g) : g;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1 : static_cast<unsigned long>(k);
    Isometry result = identity_isometry(model_of(g));
    while (e > 0) {
        if (e & 1UL) result = compose(result, base);
        e >>= 1;
        if (e > 0) base = compose(base, base);
    }
    return result;
}

namespace {

bool matrices_close(const H2Isometry& m, const H2Isometry& n, Real tol) {
    const Real scale = std::max({Real(1), std::fabs(m.a), std::fabs(m.b), std::fabs(m.c), std::fabs(m.d)});
    auto diff = [](const H2Isometry& p, const H2Isometry& q) {
        return std::max({std::fabs(p.a - q.a), std::fabs(p.b - q.b), std::fabs(p.c - q.c), std::fabs(p.d - q.d)});
    };
    const H2Isometry neg{-n.a, -n.b, -n.c, -n.d};
    return std::min(diff(m, n), diff(m, neg)) <= tol * scale;
}

}  // namespace

bool approx_equal(const Isometry& g, const Isometry& h, Real tol) {
    if (model_of(g) != model_of(h)) return false;
    switch (model_of(g)) {
        case ModelSpace::E2: {
            const auto& a = std::get<E2Isometry>(g);
            const auto& b = std::get<E2Isometry>(h);
            return angle_gap(a.angle - b.angle) <= tol && std::hypot(a.tx - b.tx, a.ty - b.ty) <= tol;
        }
        case ModelSpace::H2:
            return matrices_close(std::get<H2Isometry>(g), std::get<H2Isometry>(h), tol);
        case ModelSpace::T4:
            return std::get<T4Isometry>(g).word == std::get<T4Isometry>(h).word;
        case ModelSpace::H2xR: {
            const auto& a = std::get<H2xRIsometry>(g);
            const auto& b = std::get<H2xRIsometry>(h);
            return matrices_close(a.base, b.base, tol) && std::fabs(a.shift - b.shift) <= tol;
        }
    }
    return false;
}

IsometryClass classify(const Isometry& g, Real tol) {
    switch (model_of(g)) {
        case ModelSpace::E2: {
            const auto& m = std::get<E2Isometry>(g);
            if (angle_gap(m.angle) > tol) return {IsometryKind::elliptic, 0};
            const Real len = std::hypot(m.tx, m.ty);
            if (len > tol) return {IsometryKind::axial, len};
            return {IsometryKind::identity, 0};
        }
        case ModelSpace::H2:
            return classify_h2(std::get<H2Isometry>(g), tol);
        case ModelSpace::T4: {
            const auto& w = std::get<T4Isometry>(g).word;
            if (w.empty()) return {IsometryKind::identity, 0};
            return {IsometryKind::axial, static_cast<Real>(words::cyclic_reduce(w).core.size())};
        }
        case ModelSpace::H2xR: {
            const auto& m = std::get<H2xRIsometry>(g);
            const IsometryClass base = classify_h2(m.base, tol);
            const bool moves = std::fabs(m.shift) > tol;
            switch (base.kind) {
                case IsometryKind::axial:
                    return {IsometryKind::axial, std::hypot(base.translation_length, m.shift)};
                case IsometryKind::identity:
                case IsometryKind::elliptic:
                    if (moves) return {IsometryKind::axial, std::fabs(m.shift)};
                    return {base.kind, 0};
                case IsometryKind::parabolic:
                    return {IsometryKind::parabolic, 0};
            }
        }
    }
    throw UsageError("classify: bad model");
}

AxisEndpoints axis_endpoints(const Isometry& g, Real tol) {
    const IsometryClass cls = classify(g, tol);
    if (cls.kind != IsometryKind::axial) {
        throw DomainError("axis_endpoints: isometry is " + std::string(to_string(cls.kind)) + ", not axial");
    }
    switch (model_of(g)) {
        case ModelSpace::E2: {
            const auto& m = std::get<E2Isometry>(g);
            const Real theta = std::atan2(m.ty, m.tx);
            return {E2Boundary{wrap_angle(theta + kPi)}, E2Boundary{wrap_angle(theta)}};
        }
        case ModelSpace::H2: {
            const auto [minus, plus] = h2_fixed_points(std::get<H2Isometry>(g));
            return {minus, plus};
        }
        case ModelSpace::T4: {
            const auto [conj, core] = words::cyclic_reduce(std::get<T4Isometry>(g).word);
            return {words::normalize_infinite(conj, words::inverse(core)), words::normalize_infinite(conj, core)};
        }
        case ModelSpace::H2xR: {
            const auto& m = std::get<H2xRIsometry>(g);
            const IsometryClass base = classify_h2(m.base, tol);
            if (base.kind == IsometryKind::axial) {
                const auto [minus, plus] = h2_fixed_points(m.base);
                const Real alpha = std::atan2(m.shift, base.translation_length);
                return {H2xRBoundary{minus, -alpha}, H2xRBoundary{plus, alpha}};
            }
            const Real up = std::copysign(kPi / 2, m.shift);
            return {H2xRBoundary{std::nullopt, -up}, H2xRBoundary{std::nullopt, up}};
        }
    }
    throw UsageError("axis_endpoints: bad model");
}

bool is_rank_one(const Isometry& g, Real tol) {
    if (classify(g, tol).kind != IsometryKind::axial) return false;
    const ModelSpace model = model_of(g);
    return model == ModelSpace::H2 || model == ModelSpace::T4;
}

namespace {

struct AxisCoordinate {
    Real parameter;  // signed arclength of the projection along the axis
    Real offset;     // distance to the axis
};

// Nearest-point projection onto the axis in the H2xR flat strip
// (axis of the H2 factor) × R, axis line through height 0 with slope angle beta.
AxisCoordinate product_axis_coordinate(Real u, Real delta, Real height, Real beta) {
    const Real cb = std::cos(beta);
    const Real sb = std::sin(beta);
    auto sq = [&](Real s) {
        const Real ch = std::cosh(delta) * std::cosh(s * cb - u);
        const Real horizontal = std::acosh(std::max(Real(1), ch));
        const Real vertical = height - s * sb;
        return horizontal * horizontal + vertical * vertical;
    };
    const Real centre = u * cb + height * sb;
    const Real reach = 2 * (std::fabs(u) + std::fabs(height) + delta) + 10;
    Real lo = centre - reach;
    Real hi = centre + reach;
    const Real phi = (std::sqrt(Real(5)) - 1) / 2;
    for (int i = 0; i < 200; ++i) {
        const Real m1 = hi - phi * (hi - lo);
        const Real m2 = lo + phi * (hi - lo);
        if (sq(m1) < sq(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    const Real s = (lo + hi) / 2;
    return {s, std::sqrt(sq(s))};
}

AxisCoordinate axis_coordinate(const Isometry& g, const Point& p, Real tol) {
    switch (model_of(g)) {
        case ModelSpace::E2: {
            const auto& m = std::get<E2Isometry>(g);
            const auto& q = std::get<E2Point>(p);
            const Real len = std::hypot(m.tx, m.ty);
            const Real ux = m.tx / len;
            const Real uy = m.ty / len;
            return {q.x * ux + q.y * uy, std::fabs(q.x * uy - q.y * ux)};
        }
        case ModelSpace::H2: {
            const auto [minus, plus] = h2_fixed_points(std::get<H2Isometry>(g));
            const H2Point z = detail::h2::apply(detail::h2::axis_frame(minus, plus), std::get<H2Point>(p));
            return {std::log(std::hypot(z.x, z.y)), std::asinh(std::fabs(z.x) / z.y)};
        }
        case ModelSpace::T4: {
            const auto [conj, core] = words::cyclic_reduce(std::get<T4Isometry>(g).word);
            const std::string v = words::multiply(words::inverse(conj), std::get<T4Point>(p).word);
            const std::size_t forward = words::common_prefix(v, words::normalize_infinite("", core));
            const std::size_t backward = words::common_prefix(v, words::normalize_infinite("", words::inverse(core)));
            const Real param = static_cast<Real>(forward) - static_cast<Real>(backward);
            return {param, static_cast<Real>(v.size() - std::max(forward, backward))};
        }
        case ModelSpace::H2xR: {
            const auto& m = std::get<H2xRIsometry>(g);
            const auto& q = std::get<H2xRPoint>(p);
            const IsometryClass base = classify_h2(m.base, tol);
            if (base.kind == IsometryKind::axial) {
                const auto [minus, plus] = h2_fixed_points(m.base);
                const H2Point z = detail::h2::apply(detail::h2::axis_frame(minus, plus), q.base);
                const Real u = std::log(std::hypot(z.x, z.y));
                const Real delta = std::asinh(std::fabs(z.x) / z.y);
                return product_axis_coordinate(u, delta, q.height, std::atan2(m.shift, base.translation_length));
            }
            const H2Point foot = base.kind == IsometryKind::elliptic ? h2_elliptic_fixed_point(m.base) : H2Point{0, 1};
            return {q.height, detail::h2::distance(q.base, foot)};
        }
    }
    throw UsageError("contraction_width: bad model");
}

}  // namespace

Real contraction_width(const Isometry& g, const Point& center, Real radius, std::size_t samples, std::uint64_t seed,
                       Real tol) {
    require_same_model(g, center, "contraction_width");
    if (!(radius > 0)) throw UsageError("contraction_width: radius must be positive");
    if (samples == 0) throw UsageError("contraction_width: need at least one sample");
    const IsometryClass cls = classify(g, tol);
    if (cls.kind != IsometryKind::axial) throw DomainError("contraction_width: isometry is not axial");

    const AxisCoordinate c = axis_coordinate(g, center, tol);
    if (c.offset <= radius + tol) throw DomainError("contraction_width: ball intersects the axis");

    sampling::Engine rng(seed);
    Real lo = c.parameter;
    Real hi = c.parameter;
    for (std::size_t i = 0; i < samples; ++i) {
        const AxisCoordinate a = axis_coordinate(g, sampling::random_point_in_ball(center, radius, rng), tol);
        if (a.offset <= tol) throw DomainError("contraction_width: sampled point lies on the axis");
        lo = std::min(lo, a.parameter);
        hi = std::max(hi, a.parameter);
    }
    return hi - lo;
}

namespace {

std::vector<Point> signed_orbit(const Isometry& g, const Point& x, int max_power) {
    // index i in [0, 2M): power = i < M ? i+1 : -(i-M+1)
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(2 * max_power));
    Point forward = x;
    for (int m = 1; m <= max_power; ++m) {
        forward = cat0lab::apply(g, forward);
        out.push_back(forward);
    }
    const Isometry ginv = inverse(g);
    Point backward = x;
    for (int m = 1; m <= max_power; ++m) {
        backward = cat0lab::apply(ginv, backward);
        out.push_back(backward);
    }
    return out;
}

}  // namespace

Real independence_score(const Isometry& g1, const Isometry& g2, const Point& x, int max_power) {
    require_same_model(g1, g2, "independence_score");
    if (max_power < 1) throw UsageError("independence_score: max_power must be >= 1");
    const auto a = signed_orbit(g1, x, max_power);
    const auto b = signed_orbit(g2, x, max_power);
    Real best = std::numeric_limits<Real>::infinity();
    for (const auto& p : a) {
        for (const auto& q : b) best = std::min(best, distance(p, q));
    }
    return best;
}

Real independence_shell_score(const Isometry& g1, const Isometry& g2, const Point& x, int max_power) {
    require_same_model(g1, g2, "independence_shell_score");
    if (max_power < 1) throw UsageError("independence_shell_score: max_power must be >= 1");
    const auto a = signed_orbit(g1, x, max_power);
    const auto b = signed_orbit(g2, x, max_power);
    const auto M = static_cast<std::size_t>(max_power);
    auto magnitude = [M](std::size_t i) { return i < M ? i + 1 : i - M + 1; };
    Real best = std::numeric_limits<Real>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (std::max(magnitude(i), magnitude(j)) != M) continue;
            best = std::min(best, distance(a[i], b[j]));
        }
    }
    return best;
}

NorthSouthResult north_south_constant(const Isometry& g, Real eps_plus, Real eps_minus, std::size_t samples,
                                      std::uint64_t seed, std::size_t cap, Real tol) {
    return north_south_constant(g, default_basepoint(model_of(g)), eps_plus, eps_minus, samples, seed, cap, tol);
}

NorthSouthResult north_south_constant(const Isometry& g, const Point& basepoint, Real eps_plus, Real eps_minus,
                                      std::size_t samples, std::uint64_t seed, std::size_t cap, Real tol) {
    if (!is_rank_one(g, tol)) throw DomainError("north_south_constant: isometry is not rank one");
    if (!(eps_plus > 0) || !(eps_minus > 0)) throw UsageError("north_south_constant: eps must be positive");
    const AxisEndpoints ends = axis_endpoints(g, tol);

    sampling::Engine rng(seed);
    std::vector<BoundaryPoint> points;
    points.reserve(samples);
    const std::size_t max_attempts = 1000 * std::max<std::size_t>(samples, 1);
    for (std::size_t attempt = 0; points.size() < samples; ++attempt) {
        if (attempt >= max_attempts) {
            throw UsageError("north_south_constant: eps_minus excludes almost every boundary point");
        }
        BoundaryPoint xi = sampling::random_boundary(model_of(g), rng);
        if (boundary_metric(basepoint, xi, ends.repelling) >= eps_minus) points.push_back(std::move(xi));
    }

    auto all_close = [&] {
        return std::all_of(points.begin(), points.end(),
                            [&](const BoundaryPoint& p) { return boundary_metric(basepoint, p, ends.attracting) < eps_plus; });
    };
    for (std::size_t k = 0; k <= cap; ++k) {
        if (all_close()) return {k, false};
        for (auto& p : points) p = apply_boundary(g, p);
    }
    return {cap, true};
}

}  // namespace cat0lab
