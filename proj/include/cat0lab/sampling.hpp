#pragma once

#include <random>

#include "cat0lab/types.hpp"

// Random generators for model-space values, used by the Monte-Carlo checks and
// by the property tests.
namespace cat0lab::sampling {

using Engine = std::mt19937_64;

Real uniform(Engine& rng, Real lo, Real hi);

/// Random reduced word of the given length.
std::string random_word(Engine& rng, std::size_t length);
/// Random reduced word of length length extending `prefix` without backtracking.
std::string extend_word(Engine& rng, std::string prefix, std::size_t length);

/// Point within roughly `scale` of the model basepoint (T4: word length <= scale).
Point random_point(ModelSpace model, Engine& rng, Real scale = 3);
/// Boundary point; uniform in the visual angle from the basepoint for E2 / H2,
/// random prefix plus period for T4.
BoundaryPoint random_boundary(ModelSpace model, Engine& rng);
Isometry random_isometry(ModelSpace model, Engine& rng, Real scale = 2);
/// Point of the closed ball B(center, radius); about half of the samples lie on
/// the sphere of radius `radius` (vertex-granular in T4).
Point random_point_in_ball(const Point& center, Real radius, Engine& rng);

}  // namespace cat0lab::sampling
