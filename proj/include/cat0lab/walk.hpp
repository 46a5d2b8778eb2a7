#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cat0lab/types.hpp"

namespace cat0lab {

struct Atom {
    Isometry g;
    Real p = 0;
};

struct StepDistribution {
    ModelSpace model = ModelSpace::E2;
    std::vector<Atom> atoms;
};

/// Checks positivity, total mass 1 within 1e-12 and a common model, and
/// normalizes every atom. Throws ValidationError.
StepDistribution validated(StepDistribution spec);

StepDistribution uniform_distribution(const std::vector<Isometry>& gs);

struct AdmissibilityReport {
    std::size_t depth = 0;
    std::size_t elements_reached = 0;
    bool symmetric_closure_hit = false;  // closure stopped early at the size cap
    bool certified = false;
};

inline constexpr std::size_t kClosureCap = 200'000;

/// Breadth-first closure of products of at most `depth` atoms; certified when
/// every atom's inverse shows up.
AdmissibilityReport validate_distribution(const StepDistribution& spec, std::size_t depth,
                                          std::size_t cap = kClosureCap);

struct WalkTrace {
    StepDistribution spec;
    std::uint64_t seed = 0;
    std::uint64_t path = 0;
    Point basepoint;
    std::size_t n = 0;
    std::size_t stride = 1;
    std::vector<std::uint32_t> increments;  // atom index of omega_1..omega_n
    std::vector<std::size_t> steps;         // stored step indices, always 0 and n
    std::vector<Point> positions;           // Z_k x at the stored steps
    std::vector<Isometry> products;         // Z_k at the stored steps
};

/// Z_k = omega_1 ... omega_k with omega_i drawn from CounterRng(seed, path).
/// Only every `stride`-th step (plus the last) is stored.
WalkTrace sample_walk(const StepDistribution& spec, const Point& x, std::size_t n, std::uint64_t seed,
                      std::uint64_t path = 0, std::size_t stride = 1);

/// The i-th increment drawn for (seed, path, step); exposed for tests.
std::uint32_t draw_atom(const StepDistribution& spec, std::uint64_t seed, std::uint64_t path, std::size_t step);

/// Z_k^{-1} x for k = 0..n, every step regardless of the stride.
std::vector<Point> inverse_walk_positions(const WalkTrace& trace);

/// Z_k for every k = 0..n, rebuilt from the increments.
std::vector<Isometry> all_products(const WalkTrace& trace);

/// mu * nu0 for nu0 uniform on `points`.
std::vector<std::pair<BoundaryPoint, Real>> pushforward_atoms(const StepDistribution& spec,
                                                              const std::vector<BoundaryPoint>& points);

/// Runs f(path) for path in [0, count) on up to `threads` workers. Results must
/// be written to per-path slots so the reduction order stays fixed.
template <class F>
void parallel_paths(std::size_t count, unsigned threads, F&& f);

}  // namespace cat0lab

#include "cat0lab/detail/parallel.hpp"
