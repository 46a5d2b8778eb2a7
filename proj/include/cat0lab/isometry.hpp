#pragma once

#include <cstdint>

#include "cat0lab/types.hpp"

namespace cat0lab {

/// Validated canonical form: E2 angle wrapped to [0, 2pi), H2 matrix rescaled to
/// determinant 1 and sign-normalized, T4 word checked reduced. Throws
/// ValidationError otherwise.
Isometry normalize(const Isometry& g, Real tol = kDefaultTolerance);

Point apply(const Isometry& g, const Point& p);
BoundaryPoint apply_boundary(const Isometry& g, const BoundaryPoint& xi);

/// g ∘ h, i.e. apply(compose(g, h), p) == apply(g, apply(h, p)).
Isometry compose(const Isometry& g, const Isometry& h);
Isometry inverse(const Isometry& g);
/// g^k for any integer k.
Isometry power(const Isometry& g, long k);

bool approx_equal(const Isometry& g, const Isometry& h, Real tol = kDefaultTolerance);

enum class IsometryKind { identity, elliptic, parabolic, axial };
std::string_view to_string(IsometryKind kind);

struct IsometryClass {
    IsometryKind kind = IsometryKind::identity;
    Real translation_length = 0;
};

IsometryClass classify(const Isometry& g, Real tol = kDefaultTolerance);

struct AxisEndpoints {
    BoundaryPoint repelling;   // g^-
    BoundaryPoint attracting;  // g^+
};

/// Fixed boundary points of an axial isometry; DomainError otherwise.
AxisEndpoints axis_endpoints(const Isometry& g, Real tol = kDefaultTolerance);

/// Axial with no axis bounding a flat half-plane. Closed form per model: every
/// axial isometry of H2 and T4, none of E2 and H2xR.
bool is_rank_one(const Isometry& g, Real tol = kDefaultTolerance);

/// Diameter of the nearest-point projection onto the axis of g of `samples`
/// points drawn from the ball B(center, radius). For E2 the axis is the line
/// through the origin; for H2xR with an axial H2 factor it is the line of the
/// flat (axis of the H2 factor) × R through height 0.
/// DomainError if g is not axial or the ball meets the axis.
Real contraction_width(const Isometry& g, const Point& center, Real radius, std::size_t samples,
                       std::uint64_t seed = 0, Real tol = kDefaultTolerance);

/// min over 1 <= |m|, |n| <= max_power of d(g1^m x, g2^n x).
Real independence_score(const Isometry& g1, const Isometry& g2, const Point& x, int max_power);
/// Same minimum restricted to the shell max(|m|, |n|) == max_power. Unbounded in
/// max_power exactly when (m, n) -> d(g1^m x, g2^n x) is proper.
Real independence_shell_score(const Isometry& g1, const Isometry& g2, const Point& x, int max_power);

struct NorthSouthResult {
    std::size_t k0 = 0;
    bool overflow = false;
};

inline constexpr std::size_t kNorthSouthCap = 1'000'000;

/// Smallest k such that g^k maps every one of `samples` random boundary points
/// lying at boundary_metric distance >= eps_minus from g^- into the
/// eps_plus-neighbourhood of g^+. DomainError unless g is rank one.
NorthSouthResult north_south_constant(const Isometry& g, Real eps_plus, Real eps_minus, std::size_t samples,
                                      std::uint64_t seed, std::size_t cap = kNorthSouthCap,
                                      Real tol = kDefaultTolerance);
NorthSouthResult north_south_constant(const Isometry& g, const Point& basepoint, Real eps_plus, Real eps_minus,
                                      std::size_t samples, std::uint64_t seed, std::size_t cap = kNorthSouthCap,
                                      Real tol = kDefaultTolerance);

}  // namespace cat0lab
