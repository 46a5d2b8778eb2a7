#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cat0lab/types.hpp"

namespace cat0lab {

/// Busemann function h_xi^x(z) = lim d(x_n, z) - d(x_n, x), x_n -> xi, by closed
/// form per model. h(x) = 0 and it decreases along rays toward xi.
Real horofunction(const BoundaryPoint& xi, const Point& x, const Point& z);

/// d(ray_point(x, xi, t), z) - t, the finite-t version of the limit above.
Real horofunction_limit_oracle(const BoundaryPoint& xi, const Point& x, const Point& z, Real t);

/// Basic open set U(c, r, eps) of the cone topology, c the ray from `base` to
/// `target`. Construct with make_neighborhood, which enforces r > eps > 0.
struct VisualNeighborhood {
    Point base;
    BoundaryPoint target;
    Real r = 1;
    Real eps = 0.5;
};

VisualNeighborhood make_neighborhood(Point base, BoundaryPoint target, Real r, Real eps);

bool visual_contains(const VisualNeighborhood& u, const Point& target);
bool visual_contains(const VisualNeighborhood& u, const BoundaryPoint& target);

/// Samples points and boundary points of U(x2, xi, outer_r, eps/3) and checks
/// each lies in U(x, xi, r, eps).
bool neighborhood_nesting_check(const Point& x, const Point& x2, const BoundaryPoint& xi, Real r, Real eps,
                                Real outer_r, std::size_t samples, std::uint64_t seed);

/// Doubles outer_r from `start` until neighborhood_nesting_check passes.
std::optional<Real> locate_nesting_radius(const Point& x, const Point& x2, const BoundaryPoint& xi, Real r, Real eps,
                                          std::size_t samples, std::uint64_t seed, Real start, int max_doublings = 20);

struct AngleEstimate {
    Real angle = 0;                // value at the last grid point
    Real monotonicity_defect = 0;  // largest decrease between consecutive grid points
    std::vector<Real> values;
};

std::vector<Real> default_angle_grid();

/// Comparison angle at x between ray points at distance t toward xi and eta,
/// evaluated along the increasing grid t_grid.
AngleEstimate angle_at_infinity(const Point& x, const BoundaryPoint& xi, const BoundaryPoint& eta,
                                const std::vector<Real>& t_grid = default_angle_grid(),
                                Real tol = kDefaultTolerance);

struct TitsValue {
    Real value = 0;
    bool infinite = false;
};

TitsValue tits_distance(const BoundaryPoint& xi, const BoundaryPoint& eta, Real tol = kDefaultTolerance);

/// Whether the open Tits ball B_T(xi, pi) is {xi}.
bool tits_ball_is_trivial(const BoundaryPoint& xi);

inline constexpr Real kBoundaryMetricRadius = 1;

/// d(p_r0(xi), p_r0(eta)) for the projection onto B(x, r0). T4 uses the visual
/// metric 2 exp(-(xi|eta)_x) instead (radius-1 projections only see the first
/// edge).
Real boundary_metric(const Point& x, const BoundaryPoint& xi, const BoundaryPoint& eta,
                     Real r0 = kBoundaryMetricRadius);

/// Gromov product (xi|eta)_x in T4: length of the common part of the two rays from x.
std::size_t tree_gromov_product(const std::string& x, const T4Boundary& xi, const T4Boundary& eta);

struct GeodesicWitness {
    Point point;  // a point on the geodesic
    BoundaryPoint from;
    BoundaryPoint to;
    bool rank_one = false;
};

/// Bi-infinite geodesic joining xi to eta when one exists, flagged by whether
/// it bounds a flat half-plane.
std::optional<GeodesicWitness> rank_one_geodesic_witness(const BoundaryPoint& xi, const BoundaryPoint& eta,
                                                         Real tol = kDefaultTolerance);

}  // namespace cat0lab
