#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace cat0lab {

// Extended precision: random-walk positions in H2 routinely sit at hyperbolic
// distance in the thousands, where double-precision coordinates underflow.
using Real = long double;

inline constexpr Real kDefaultTolerance = 1e-9L;
inline constexpr Real kPi = 3.141592653589793238462643383279502884L;

enum class ModelSpace { E2, H2, T4, H2xR };

std::string_view to_string(ModelSpace model);
ModelSpace parse_model(std::string_view name);

/// Caller violated a precondition (bad argument, model mismatch, out-of-range parameter).
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Operation is undefined for this (well-formed) input, e.g. axis of a parabolic.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Malformed data: probability sums, non-reduced words, bad JSON payloads.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Points

struct E2Point {
    Real x = 0;
    Real y = 0;
};

/// Upper half-plane point; y > 0.
struct H2Point {
    Real x = 0;
    Real y = 1;
};

/// Vertex of the Cayley graph of F2 = <a,b>: a freely reduced word over "aAbB"
/// (upper case is the inverse letter).
struct T4Point {
    std::string word;
};

struct H2xRPoint {
    H2Point base;
    Real height = 0;
};

using Point = std::variant<E2Point, H2Point, T4Point, H2xRPoint>;

// ---------------------------------------------------------------------------
// Boundary points

/// Direction angle in [0, 2pi).
struct E2Boundary {
    Real angle = 0;
};

/// Point of R ∪ {∞}.
struct H2Boundary {
    bool at_infinity = false;
    Real value = 0;

    static H2Boundary infinity() { return {true, 0}; }
    static H2Boundary finite(Real v) { return {false, v}; }
};

/// Eventually periodic infinite reduced word prefix · period^∞, kept in the
/// normal form produced by words::normalize_infinite (shortest prefix,
/// primitive period).
struct T4Boundary {
    std::string prefix;
    std::string period;
};

/// Ray class in H2 × R: H2 component at speed cos(alpha), height at speed
/// sin(alpha). alpha = ±pi/2 (vertical) forces xi = nullopt.
struct H2xRBoundary {
    std::optional<H2Boundary> xi;
    Real alpha = 0;
};

using BoundaryPoint = std::variant<E2Boundary, H2Boundary, T4Boundary, H2xRBoundary>;

// ---------------------------------------------------------------------------
// Isometries

/// p -> R(angle) p + (tx, ty).
struct E2Isometry {
    Real angle = 0;
    Real tx = 0;
    Real ty = 0;
};

/// Element of PSL(2,R) acting by z -> (az+b)/(cz+d). The determinant is 1 for
/// user-supplied matrices; long products are kept unnormalized.
struct H2Isometry {
    Real a = 1, b = 0, c = 0, d = 1;
};

/// Left multiplication by a reduced word.
struct T4Isometry {
    std::string word;
};

struct H2xRIsometry {
    H2Isometry base;
    Real shift = 0;
};

using Isometry = std::variant<E2Isometry, H2Isometry, T4Isometry, H2xRIsometry>;

template <class... Ts>
ModelSpace model_of(const std::variant<Ts...>& v) {
    return static_cast<ModelSpace>(v.index());
}

/// Throws UsageError unless both values live in the same model.
template <class A, class B>
void require_same_model(const A& a, const B& b, std::string_view what) {
    if (model_of(a) != model_of(b)) {
        throw UsageError(std::string(what) + ": model mismatch (" + std::string(to_string(model_of(a))) +
                         " vs " + std::string(to_string(model_of(b))) + ")");
    }
}

/// Standard basepoint of each model: origin, i, identity vertex, (i, 0).
Point default_basepoint(ModelSpace model);
Isometry identity_isometry(ModelSpace model);

}  // namespace cat0lab
