#include "cat0lab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

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

void require_finite(Real v, const char* what) {
    if (!std::isfinite(v)) throw ValidationError(std::string(what) + ": non-finite coordinate");
}

// --- T4 -------------------------------------------------------------------

std::size_t t4_distance(const std::string& p, const std::string& q) {
    const std::size_t common = words::common_prefix(p, q);
    return p.size() + q.size() - 2 * common;
}

std::size_t integer_parameter(Real t, Real tol, const char* what) {
    const Real r = std::round(t);
    if (std::fabs(t - r) > tol || r < 0) {
        throw UsageError(std::string(what) + ": T4 is vertex-granular, parameter must be a nonnegative integer");
    }
    return static_cast<std::size_t>(r);
}

std::string t4_ray_point(const std::string& x, const T4Boundary& xi, std::size_t t) {
    const std::size_t common = words::common_prefix(x, xi);
    const std::size_t up = x.size() - common;
    if (t <= up) return x.substr(0, x.size() - t);
    return words::take(xi, common + (t - up));
}

T4Boundary t4_direction(const std::string& x, const std::string& y) {
    const std::string step = words::multiply(words::inverse(x), y);
    if (step.empty()) throw UsageError("direction: y equals x");
    return words::normalize_infinite(y, std::string(1, step.back()));
}

// --- H2xR -----------------------------------------------------------------

H2xRPoint product_ray_point(const H2xRPoint& x, const H2xRBoundary& xi, Real t) {
    H2xRPoint out;
    out.height = x.height + t * std::sin(xi.alpha);
    if (xi.xi) {
        const Real theta = detail::h2::boundary_theta(x.base, *xi.xi);
        out.base = detail::h2::ray_point(x.base, theta, t * std::cos(xi.alpha));
    } else {
        out.base = x.base;
    }
    return out;
}

H2xRBoundary product_direction(const H2xRPoint& x, const H2xRPoint& y, Real tol) {
    const Real horizontal = detail::h2::distance(x.base, y.base);
    const Real vertical = y.height - x.height;
    if (horizontal <= tol) {
        if (std::fabs(vertical) <= tol) throw UsageError("direction: y equals x");
        return {std::nullopt, std::copysign(kPi / 2, vertical)};
    }
    const Real theta = detail::h2::point_theta(x.base, y.base);
    return {detail::h2::boundary_from_theta(x.base, theta), std::atan2(vertical, horizontal)};
}

template <class T>
const T& same_model(const Point& p, const Point& q, const char* what) {
    require_same_model(p, q, what);
    return std::get<T>(p);
}

}  // namespace

void validate(const Point& p) {
    std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, E2Point>) {
                require_finite(v.x, "E2 point");
                require_finite(v.y, "E2 point");
            } else if constexpr (std::is_same_v<T, H2Point>) {
                require_finite(v.x, "H2 point");
                require_finite(v.y, "H2 point");
                if (!(v.y > 0)) throw ValidationError("H2 point: imaginary part must be positive");
            } else if constexpr (std::is_same_v<T, T4Point>) {
                if (!words::is_reduced(v.word)) throw ValidationError("T4 point: word '" + v.word + "' is not reduced");
            } else {
                require_finite(v.base.x, "H2xR point");
                require_finite(v.base.y, "H2xR point");
                require_finite(v.height, "H2xR point");
                if (!(v.base.y > 0)) throw ValidationError("H2xR point: imaginary part must be positive");
            }
        },
        p);
}

BoundaryPoint normalize(const BoundaryPoint& xi, Real tol) {
    return std::visit(
        [tol](const auto& v) -> BoundaryPoint {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, E2Boundary>) {
                require_finite(v.angle, "E2 boundary point");
                return E2Boundary{wrap_angle(v.angle)};
            } else if constexpr (std::is_same_v<T, H2Boundary>) {
                if (!v.at_infinity) require_finite(v.value, "H2 boundary point");
                return v.at_infinity ? H2Boundary::infinity() : v;
            } else if constexpr (std::is_same_v<T, T4Boundary>) {
                if (v.period.empty()) throw ValidationError("T4 boundary point: empty period");
                return words::normalize_infinite(v.prefix, v.period);
            } else {
                require_finite(v.alpha, "H2xR boundary point");
                const Real half = kPi / 2;
                if (std::fabs(v.alpha) > half + tol) {
                    throw ValidationError("H2xR boundary point: slope outside [-pi/2, pi/2]");
                }
                if (std::fabs(v.alpha) >= half - tol) return H2xRBoundary{std::nullopt, std::copysign(half, v.alpha)};
                if (!v.xi) throw ValidationError("H2xR boundary point: ⊥ requires slope ±pi/2");
                if (!v.xi->at_infinity) require_finite(v.xi->value, "H2xR boundary point");
                return v;
            }
        },
        xi);
}

Real distance(const Point& p, const Point& q) {
    switch (model_of(p)) {
        case ModelSpace::E2: {
            const auto& a = same_model<E2Point>(p, q, "distance");
            const auto& b = std::get<E2Point>(q);
            return std::hypot(a.x - b.x, a.y - b.y);
        }
        case ModelSpace::H2: {
            const auto& a = same_model<H2Point>(p, q, "distance");
            return detail::h2::distance(a, std::get<H2Point>(q));
        }
        case ModelSpace::T4: {
            const auto& a = same_model<T4Point>(p, q, "distance");
            return static_cast<Real>(t4_distance(a.word, std::get<T4Point>(q).word));
        }
        case ModelSpace::H2xR: {
            const auto& a = same_model<H2xRPoint>(p, q, "distance");
            const auto& b = std::get<H2xRPoint>(q);
            return std::hypot(detail::h2::distance(a.base, b.base), a.height - b.height);
        }
    }
    throw UsageError("distance: bad model");
}

Point geodesic_point(const Point& p, const Point& q, Real t, Real tol) {
    require_same_model(p, q, "geodesic_point");
    const Real length = distance(p, q);
    if (t < -tol || t > length + tol) throw UsageError("geodesic_point: parameter outside [0, d(p,q)]");
    t = std::clamp(t, Real(0), length);
    if (t == 0) return p;
    switch (model_of(p)) {
        case ModelSpace::E2: {
            const auto& a = std::get<E2Point>(p);
            const auto& b = std::get<E2Point>(q);
            const Real s = t / length;
            return E2Point{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
        }
        case ModelSpace::H2: {
            const auto& a = std::get<H2Point>(p);
            return detail::h2::ray_point(a, detail::h2::point_theta(a, std::get<H2Point>(q)), t);
        }
        case ModelSpace::T4: {
            const std::size_t steps = integer_parameter(t, tol, "geodesic_point");
            const auto& a = std::get<T4Point>(p).word;
            const std::string path = words::multiply(words::inverse(a), std::get<T4Point>(q).word);
            return T4Point{words::multiply(a, path.substr(0, steps))};
        }
        case ModelSpace::H2xR: {
            const auto& a = std::get<H2xRPoint>(p);
            return product_ray_point(a, product_direction(a, std::get<H2xRPoint>(q), 0), t);
        }
    }
    throw UsageError("geodesic_point: bad model");
}

Point ray_point(const Point& x, const BoundaryPoint& xi_in, Real t, Real tol) {
    require_same_model(x, xi_in, "ray_point");
    if (t < 0) throw UsageError("ray_point: t must be nonnegative");
    const BoundaryPoint xi = normalize(xi_in, tol);
    switch (model_of(x)) {
        case ModelSpace::E2: {
            const auto& p = std::get<E2Point>(x);
            const Real a = std::get<E2Boundary>(xi).angle;
            return E2Point{p.x + t * std::cos(a), p.y + t * std::sin(a)};
        }
        case ModelSpace::H2: {
            const auto& p = std::get<H2Point>(x);
            return detail::h2::ray_point(p, detail::h2::boundary_theta(p, std::get<H2Boundary>(xi)), t);
        }
        case ModelSpace::T4: {
            const std::size_t steps = integer_parameter(t, tol, "ray_point");
            return T4Point{t4_ray_point(std::get<T4Point>(x).word, std::get<T4Boundary>(xi), steps)};
        }
        case ModelSpace::H2xR:
            return product_ray_point(std::get<H2xRPoint>(x), std::get<H2xRBoundary>(xi), t);
    }
    throw UsageError("ray_point: bad model");
}

Point project_to_ball(const Point& center, Real r, const Point& target, Real tol) {
    if (!(r > 0)) throw UsageError("project_to_ball: radius must be positive");
    if (distance(center, target) <= r) return target;
    return geodesic_point(center, target, r, tol);
}

Point project_to_ball(const Point& center, Real r, const BoundaryPoint& target, Real tol) {
    if (!(r > 0)) throw UsageError("project_to_ball: radius must be positive");
    return ray_point(center, target, r, tol);
}

Real comparison_angle(const Point& x, const Point& y, const Point& z, Real tol) {
    const Real a = distance(x, y);
    const Real b = distance(x, z);
    if (a <= tol || b <= tol) throw UsageError("comparison_angle: degenerate triangle (y or z equals x)");
    const Real c = distance(y, z);
    const Real cosine = std::clamp((a * a + b * b - c * c) / (2 * a * b), Real(-1), Real(1));
    return std::acos(cosine);
}

BoundaryPoint direction(const Point& x, const Point& y, Real tol) {
    require_same_model(x, y, "direction");
    switch (model_of(x)) {
        case ModelSpace::E2: {
            const auto& p = std::get<E2Point>(x);
            const auto& q = std::get<E2Point>(y);
            if (std::hypot(q.x - p.x, q.y - p.y) <= tol) throw UsageError("direction: y equals x");
            return E2Boundary{wrap_angle(std::atan2(q.y - p.y, q.x - p.x))};
        }
        case ModelSpace::H2: {
            const auto& p = std::get<H2Point>(x);
            const auto& q = std::get<H2Point>(y);
            if (detail::h2::distance(p, q) <= tol) throw UsageError("direction: y equals x");
            return detail::h2::boundary_from_theta(p, detail::h2::point_theta(p, q));
        }
        case ModelSpace::T4:
            return t4_direction(std::get<T4Point>(x).word, std::get<T4Point>(y).word);
        case ModelSpace::H2xR:
            return product_direction(std::get<H2xRPoint>(x), std::get<H2xRPoint>(y), tol);
    }
    throw UsageError("direction: bad model");
}

bool approx_equal(const Point& p, const Point& q, Real tol) {
    if (model_of(p) != model_of(q)) return false;
    return distance(p, q) <= tol;
}

namespace {

bool h2_boundary_equal(const H2Boundary& a, const H2Boundary& b, Real tol) {
    const H2Point i{0, 1};
    Real diff = std::fabs(detail::h2::boundary_theta(i, a) - detail::h2::boundary_theta(i, b));
    diff = std::min(diff, kPi - diff);
    return diff <= tol;
}

}  // namespace

bool approx_equal(const BoundaryPoint& xi_in, const BoundaryPoint& eta_in, Real tol) {
    if (model_of(xi_in) != model_of(eta_in)) return false;
    const BoundaryPoint xi = normalize(xi_in, tol);
    const BoundaryPoint eta = normalize(eta_in, tol);
    switch (model_of(xi)) {
        case ModelSpace::E2: {
            Real diff = std::fabs(std::get<E2Boundary>(xi).angle - std::get<E2Boundary>(eta).angle);
            diff = std::min(diff, kTwoPi - diff);
            return diff <= tol;
        }
        case ModelSpace::H2:
            return h2_boundary_equal(std::get<H2Boundary>(xi), std::get<H2Boundary>(eta), tol);
        case ModelSpace::T4: {
            const auto& a = std::get<T4Boundary>(xi);
            const auto& b = std::get<T4Boundary>(eta);
            return a.prefix == b.prefix && a.period == b.period;
        }
        case ModelSpace::H2xR: {
            const auto& a = std::get<H2xRBoundary>(xi);
            const auto& b = std::get<H2xRBoundary>(eta);
            if (std::fabs(a.alpha - b.alpha) > tol) return false;
            if (!a.xi || !b.xi) return !a.xi && !b.xi;
            return h2_boundary_equal(*a.xi, *b.xi, tol);
        }
    }
    return false;
}

Real visual_angle(const Point& x, const BoundaryPoint& xi) {
    require_same_model(x, xi, "visual_angle");
    switch (model_of(x)) {
        case ModelSpace::E2:
            return wrap_angle(std::get<E2Boundary>(xi).angle);
        case ModelSpace::H2:
            return 2 * detail::h2::boundary_theta(std::get<H2Point>(x), std::get<H2Boundary>(xi));
        case ModelSpace::H2xR: {
            const auto& b = std::get<H2xRBoundary>(xi);
            if (!b.xi) return 0;
            return 2 * detail::h2::boundary_theta(std::get<H2xRPoint>(x).base, *b.xi);
        }
        case ModelSpace::T4:
            break;
    }
    throw UsageError("visual_angle: not defined for T4");
}

BoundaryPoint boundary_at_visual_angle(const Point& x, Real angle) {
    switch (model_of(x)) {
        case ModelSpace::E2:
            return E2Boundary{wrap_angle(angle)};
        case ModelSpace::H2:
            return detail::h2::boundary_from_theta(std::get<H2Point>(x), wrap_angle(angle) / 2);
        default:
            throw UsageError("boundary_at_visual_angle: only defined for E2 and H2");
    }
}

}  // namespace cat0lab
