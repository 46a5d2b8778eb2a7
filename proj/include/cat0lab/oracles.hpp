#pragma once

#include <cstddef>
#include <vector>

#include "cat0lab/types.hpp"

namespace cat0lab::oracle {

/// Law of |Z_n| for the simple random walk on the free group of the given
/// rank, from the birth-death chain on the distance to the identity: up with
/// probability (2r-1)/(2r) away from 0, always up from 0.
std::vector<Real> tree_distance_law(std::size_t n, std::size_t rank = 2);

/// E|Z_n| / n computed exactly from tree_distance_law.
Real tree_mean_speed(std::size_t n, std::size_t rank = 2);

/// Limit speed (r-1)/r of the same chain.
Real tree_drift(std::size_t rank = 2);

/// d(ray_point(x, xi, t), z) - t, which converges to the horofunction.
Real busemann_limit(const BoundaryPoint& xi, const Point& x, const Point& z, Real t);

}  // namespace cat0lab::oracle
