#pragma once

// Upper half-plane helpers shared by the H2 and H2xR code paths.
//
// Directions at a base point p are encoded by a half-angle theta in [0, pi):
// after the affine map z -> (z - Re p)/Im p sending p to i, the geodesic ray
// with parameter theta is t -> R_theta(i e^t), R_theta the rotation about i
// with R_theta(∞) = -cot(theta). The Cayley disk angle of the ray is 2 theta.

#include <cmath>
#include <complex>

#include "cat0lab/types.hpp"

namespace cat0lab::detail::h2 {

using Complex = std::complex<Real>;

inline Real distance(const H2Point& p, const H2Point& q) {
    const Real chord = std::hypot(p.x - q.x, p.y - q.y);
    return 2 * std::asinh(chord / (2 * std::sqrt(p.y * q.y)));
}

inline Real wrap_theta(Real theta) {
    Real t = std::fmod(theta, kPi);
    if (t < 0) t += kPi;
    if (t >= kPi) t -= kPi;
    return t;
}

inline Real point_theta(const H2Point& base, const H2Point& q) {
    const Complex a((q.x - base.x) / base.y, q.y / base.y);
    const Complex i(0, 1);
    const Complex w = (a - i) / (a + i);
    return wrap_theta(std::arg(w) / 2);
}

inline Real boundary_theta(const H2Point& base, const H2Boundary& xi) {
    if (xi.at_infinity) return 0;
    const Real shifted = (xi.value - base.x) / base.y;
    return wrap_theta(std::atan2(Real(1), -shifted));
}

inline H2Boundary boundary_from_theta(const H2Point& base, Real theta) {
    theta = wrap_theta(theta);
    const Real s = std::sin(theta);
    if (theta == 0 || s == 0) return H2Boundary::infinity();
    return H2Boundary::finite(base.x - base.y * std::cos(theta) / s);
}

/// Point at distance t >= 0 from base along the ray with half-angle theta.
inline H2Point ray_point(const H2Point& base, Real theta, Real t) {
    if (t == 0) return base;
    const Real c = std::cos(theta);
    const Real s = std::sin(theta);
    const Real e1 = std::exp(-t);
    const Real e2 = e1 * e1;
    const Real den = s * s + c * c * e2;
    const Real xr = c * s * (e2 - 1) / den;
    const Real yr = e1 / den;
    return {base.x + base.y * xr, base.y * yr};
}

/// Busemann function toward xi normalized at x.
inline Real busemann(const H2Boundary& xi, const H2Point& x, const H2Point& z) {
    if (xi.at_infinity) return std::log(x.y) - std::log(z.y);
    auto level = [&](const H2Point& w) { return 2 * std::log(std::hypot(w.x - xi.value, w.y)) - std::log(w.y); };
    return level(z) - level(x);
}

/// d(ray(s), z) for the ray from x toward xi, given a = d(x, z) and
/// h = busemann(xi, x, z). Stays accurate when z is far away and close to
/// the ray, where coordinate differences lose all precision.
inline Real ray_distance_from_busemann(Real s, Real a, Real h) {
    Real gap = a + h;  // 0 on the ray
    if (gap < 0) gap = 0;
    const Real transverse = std::exp(-h - s) * std::expm1(gap) * (-std::expm1(2 * h - gap)) / 2;
    const Real ch = std::cosh(h + s) + (transverse > 0 ? transverse : 0);
    return std::acosh(ch < 1 ? Real(1) : ch);
}

// ---------------------------------------------------------------------------
// PSL(2,R)

inline H2Isometry multiply(const H2Isometry& m, const H2Isometry& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

inline H2Isometry inverse(const H2Isometry& m) { return {m.d, -m.b, -m.c, m.a}; }

/// First nonzero entry made positive.
inline H2Isometry sign_normalized(H2Isometry m) {
    const Real lead = m.a != 0 ? m.a : (m.b != 0 ? m.b : (m.c != 0 ? m.c : m.d));
    if (lead < 0) m = {-m.a, -m.b, -m.c, -m.d};
    return m;
}

inline H2Point apply(const H2Isometry& m, const H2Point& z) {
    const Real re = m.c * z.x + m.d;
    const Real im = m.c * z.y;
    const Real den = re * re + im * im;
    const Real x = ((m.a * z.x + m.b) * re + m.a * m.c * z.y * z.y) / den;
    return {x, z.y / den};
}

inline H2Boundary apply(const H2Isometry& m, const H2Boundary& xi) {
    if (xi.at_infinity) {
        if (m.c == 0) return H2Boundary::infinity();
        return H2Boundary::finite(m.a / m.c);
    }
    const Real den = m.c * xi.value + m.d;
    if (den == 0) return H2Boundary::infinity();
    return H2Boundary::finite((m.a * xi.value + m.b) / den);
}

inline Real trace(const H2Isometry& m) { return m.a + m.d; }

/// Orientation-preserving Möbius map sending `from` to 0 and `to` to ∞.
inline H2Isometry axis_frame(const H2Boundary& from, const H2Boundary& to) {
    if (to.at_infinity) return {1, -from.value, 0, 1};
    if (from.at_infinity) return {0, -1, 1, -to.value};
    Real det = from.value - to.value;
    H2Isometry m{1, -from.value, 1, -to.value};
    if (det < 0) {
        m = {-1, from.value, 1, -to.value};
        det = -det;
    }
    const Real s = 1 / std::sqrt(det);
    return {m.a * s, m.b * s, m.c * s, m.d * s};
}

}  // namespace cat0lab::detail::h2
