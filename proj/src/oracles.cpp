#include "cat0lab/oracles.hpp"

#include <algorithm>

#include "cat0lab/boundary.hpp"

namespace cat0lab::oracle {

std::vector<Real> tree_distance_law(std::size_t n, std::size_t rank) {
    if (rank < 1) throw UsageError("tree_distance_law: rank must be >= 1");
    const Real down = Real(1) / static_cast<Real>(2 * rank);
    const Real up = 1 - down;
    std::vector<Real> law(n + 1, 0), next(n + 1, 0);
    law[0] = 1;
    for (std::size_t step = 1; step <= n; ++step) {
        std::fill(next.begin(), next.end(), Real(0));
        next[1] += law[0];
        for (std::size_t k = 1; k < step; ++k) {
            next[k + 1] += up * law[k];
            next[k - 1] += down * law[k];
        }
        law.swap(next);
    }
    return law;
}

Real tree_mean_speed(std::size_t n, std::size_t rank) {
    if (n == 0) throw UsageError("tree_mean_speed: n must be positive");
    const auto law = tree_distance_law(n, rank);
    Real mean = 0;
    for (std::size_t k = 0; k < law.size(); ++k) mean += static_cast<Real>(k) * law[k];
    return mean / static_cast<Real>(n);
}

Real tree_drift(std::size_t rank) {
    if (rank < 1) throw UsageError("tree_drift: rank must be >= 1");
    const Real down = Real(1) / static_cast<Real>(2 * rank);
    return (1 - down) - down;
}

Real busemann_limit(const BoundaryPoint& xi, const Point& x, const Point& z, Real t) {
    return horofunction_limit_oracle(xi, x, z, t);
}

}  // namespace cat0lab::oracle
