#pragma once

#include "cat0lab/types.hpp"

// Metric kernels of the four model spaces. Every function takes values of a
// single model; mixing models raises UsageError.
namespace cat0lab {

/// Throws ValidationError on malformed coordinates (H2 height <= 0,
/// non-reduced T4 word, non-finite reals).
void validate(const Point& p);
/// Canonical representative of a boundary point; throws ValidationError when
/// malformed (e.g. H2xR slope outside [-pi/2, pi/2], ⊥ with a non-vertical slope).
BoundaryPoint normalize(const BoundaryPoint& xi, Real tol = kDefaultTolerance);

Real distance(const Point& p, const Point& q);

/// Point at distance t from p on the geodesic [p, q]. T4 requires integer t.
Point geodesic_point(const Point& p, const Point& q, Real t, Real tol = kDefaultTolerance);

/// Point at distance t from x on the ray from x in the class of xi.
Point ray_point(const Point& x, const BoundaryPoint& xi, Real t, Real tol = kDefaultTolerance);

/// Nearest-point projection onto the closed ball B(center, r), extended to
/// the boundary by ray evaluation.
Point project_to_ball(const Point& center, Real r, const Point& target, Real tol = kDefaultTolerance);
Point project_to_ball(const Point& center, Real r, const BoundaryPoint& target, Real tol = kDefaultTolerance);

/// Angle at x of the Euclidean comparison triangle of (x, y, z).
Real comparison_angle(const Point& x, const Point& y, const Point& z, Real tol = kDefaultTolerance);

/// Boundary class of the ray from x through y. In T4 the ray is continued
/// past y by repeating the last letter of x^-1 y.
BoundaryPoint direction(const Point& x, const Point& y, Real tol = kDefaultTolerance);

bool approx_equal(const Point& p, const Point& q, Real tol = kDefaultTolerance);
bool approx_equal(const BoundaryPoint& xi, const BoundaryPoint& eta, Real tol = kDefaultTolerance);

/// Angular coordinate of a boundary point as seen from x, in [0, 2pi): the
/// direction angle in E2, the Cayley disk angle in H2 (and of the H2 factor in
/// H2xR, 0 for ⊥). Undefined for T4.
Real visual_angle(const Point& x, const BoundaryPoint& xi);
/// Inverse of visual_angle for E2 / H2.
BoundaryPoint boundary_at_visual_angle(const Point& x, Real angle);

}  // namespace cat0lab
