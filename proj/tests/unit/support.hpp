#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>

#include "cat0lab/boundary.hpp"
#include "cat0lab/geometry.hpp"
#include "cat0lab/isometry.hpp"
#include "cat0lab/sampling.hpp"
#include "cat0lab/walk.hpp"
#include "cat0lab/words.hpp"

namespace testing {

using namespace cat0lab;

inline constexpr std::array<ModelSpace, 4> kModels{ModelSpace::E2, ModelSpace::H2, ModelSpace::T4, ModelSpace::H2xR};

inline H2Isometry standard_g() { return {2, 0, 0, 0.5L}; }
inline H2Isometry standard_h() { return {1, 1, 1, 2}; }

/// {g, g^-1, h, h^-1} with g = diag(2, 1/2), h = [[1,1],[1,2]], uniform.
inline StepDistribution standard_h2_spec() {
    const Isometry g = standard_g(), h = standard_h();
    return uniform_distribution({g, inverse(g), h, inverse(h)});
}

inline StepDistribution tree_spec(const std::map<char, Real>& p) {
    StepDistribution s{ModelSpace::T4, {}};
    for (const auto& [c, w] : p) s.atoms.push_back({T4Isometry{std::string(1, c)}, w});
    return validated(s);
}

inline StepDistribution uniform_tree_spec() { return tree_spec({{'a', 0.25L}, {'A', 0.25L}, {'b', 0.25L}, {'B', 0.25L}}); }

inline StepDistribution e2_translation_spec() {
    return uniform_distribution({E2Isometry{0, 1, 0}, E2Isometry{0, -1, 0}, E2Isometry{0, 0, 1}, E2Isometry{0, 0, -1}});
}

inline Real mean(const std::vector<Real>& v) {
    Real s = 0;
    for (Real x : v) s += x;
    return v.empty() ? 0 : s / static_cast<Real>(v.size());
}

/// Exact hitting measure of a nearest-neighbour walk on the free group of
/// rank 2, from first-passage probabilities: F(s) solves
///   F(s) = p_s + sum_{t != s} p_t F(t^-1) F(s),
/// the limit starts with s with probability
///   nu1(s) = F(s)(1 - F(s^-1)) / (1 - F(s) F(s^-1)),
/// and nu(C_{x1..xn}) = F(x1)...F(xn) (1 - nu1(xn^-1)).
class FreeGroupHitting {
public:
    explicit FreeGroupHitting(const std::map<char, Real>& p) : p_(p) {
        for (char c : std::string("aAbB")) F_[c] = 0;
        for (int it = 0; it < 20000; ++it) {
            std::map<char, Real> next;
            for (char s : std::string("aAbB")) {
                Real back = 0;
                for (char t : std::string("aAbB")) {
                    if (t != s) back += prob(t) * F_[words::inverse_letter(t)];
                }
                next[s] = prob(s) / (1 - back);
            }
            F_ = next;
        }
        for (char s : std::string("aAbB")) {
            const Real f = F_[s], g = F_[words::inverse_letter(s)];
            nu1_[s] = f * (1 - g) / (1 - f * g);
        }
    }

    Real F(char s) const { return F_.at(s); }
    Real first_letter(char s) const { return nu1_.at(s); }

    Real cylinder(const std::string& w) const {
        Real m = 1;
        for (char c : w) m *= F_.at(c);
        return m * (1 - nu1_.at(words::inverse_letter(w.back())));
    }

private:
    Real prob(char c) const {
        const auto it = p_.find(c);
        return it == p_.end() ? 0 : it->second;
    }

    std::map<char, Real> p_;
    std::map<char, Real> F_;
    std::map<char, Real> nu1_;
};

/// Length of t -> (x(t), y(t)) in the hyperbolic metric |dz|/y, by Simpson's rule.
template <class Path>
Real hyperbolic_length(Path path, Real t0, Real t1, int steps = 20000) {
    const Real h = (t1 - t0) / steps;
    auto speed = [&](Real t) {
        const Real e = 1e-6L;
        const auto a = path(t - e), b = path(t + e);
        const Real dx = (b.first - a.first) / (2 * e), dy = (b.second - a.second) / (2 * e);
        return std::hypot(dx, dy) / path(t).second;
    };
    Real s = speed(t0) + speed(t1);
    for (int i = 1; i < steps; ++i) s += (i % 2 ? 4 : 2) * speed(t0 + i * h);
    return s * h / 3;
}

}  // namespace testing
