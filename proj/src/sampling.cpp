#include "cat0lab/sampling.hpp"

#include <cmath>

#include "cat0lab/geometry.hpp"
#include "cat0lab/isometry.hpp"
#include "cat0lab/words.hpp"

namespace cat0lab::sampling {

namespace {

constexpr std::string_view kLetters = "aAbB";

char random_letter(Engine& rng) {
    std::uniform_int_distribution<int> pick(0, 3);
    return kLetters[static_cast<std::size_t>(pick(rng))];
}

char random_letter_except(Engine& rng, char forbidden) {
    char c = random_letter(rng);
    while (c == forbidden) c = random_letter(rng);
    return c;
}

std::size_t random_size(Engine& rng, std::size_t lo, std::size_t hi) {
    std::uniform_int_distribution<std::size_t> pick(lo, hi);
    return pick(rng);
}

std::string random_cyclic_word(Engine& rng, std::size_t length) {
    for (;;) {
        std::string w = random_word(rng, length);
        if (w.size() < 2 || w.front() != words::inverse_letter(w.back())) return w;
    }
}

H2Isometry random_matrix(Engine& rng, Real scale) {
    auto rotation = [](Real t) { return H2Isometry{std::cos(t), std::sin(t), -std::sin(t), std::cos(t)}; };
    const Real t = uniform(rng, 0, scale);
    const H2Isometry stretch{std::exp(t / 2), 0, 0, std::exp(-t / 2)};
    const H2Isometry m = std::get<H2Isometry>(
        compose(compose(Isometry{rotation(uniform(rng, 0, kPi))}, Isometry{stretch}), Isometry{rotation(uniform(rng, 0, kPi))}));
    // random translation of the base point off i
    const H2Isometry shift{1, uniform(rng, -1, 1), 0, 1};
    return std::get<H2Isometry>(normalize(compose(Isometry{shift}, Isometry{m})));
}

}  // namespace

Real uniform(Engine& rng, Real lo, Real hi) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return lo + (hi - lo) * static_cast<Real>(u(rng));
}

std::string random_word(Engine& rng, std::size_t length) {
    return extend_word(rng, std::string(), length);
}

std::string extend_word(Engine& rng, std::string prefix, std::size_t length) {
    for (std::size_t i = 0; i < length; ++i) {
        const char c = prefix.empty() ? random_letter(rng) : random_letter_except(rng, words::inverse_letter(prefix.back()));
        prefix.push_back(c);
    }
    return prefix;
}

Point random_point(ModelSpace model, Engine& rng, Real scale) {
    switch (model) {
        case ModelSpace::E2:
            return E2Point{uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
        case ModelSpace::H2:
            return ray_point(H2Point{0, 1}, boundary_at_visual_angle(H2Point{0, 1}, uniform(rng, 0, 2 * kPi)),
                             uniform(rng, 0, scale));
        case ModelSpace::T4:
            return T4Point{random_word(rng, random_size(rng, 0, static_cast<std::size_t>(scale)))};
        case ModelSpace::H2xR: {
            const auto base = std::get<H2Point>(random_point(ModelSpace::H2, rng, scale));
            return H2xRPoint{base, uniform(rng, -scale, scale)};
        }
    }
    throw UsageError("random_point: bad model");
}

BoundaryPoint random_boundary(ModelSpace model, Engine& rng) {
    switch (model) {
        case ModelSpace::E2:
            return E2Boundary{uniform(rng, 0, 2 * kPi)};
        case ModelSpace::H2:
            return boundary_at_visual_angle(H2Point{0, 1}, uniform(rng, 0, 2 * kPi));
        case ModelSpace::T4: {
            const std::string prefix = random_word(rng, random_size(rng, 0, 6));
            const std::string period = random_cyclic_word(rng, random_size(rng, 1, 3));
            return words::normalize_infinite(prefix, period);
        }
        case ModelSpace::H2xR: {
            const auto xi = std::get<H2Boundary>(random_boundary(ModelSpace::H2, rng));
            return H2xRBoundary{xi, uniform(rng, -kPi / 2 + 1e-6L, kPi / 2 - 1e-6L)};
        }
    }
    throw UsageError("random_boundary: bad model");
}

Isometry random_isometry(ModelSpace model, Engine& rng, Real scale) {
    switch (model) {
        case ModelSpace::E2:
            return E2Isometry{uniform(rng, 0, 2 * kPi), uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
        case ModelSpace::H2:
            return random_matrix(rng, scale);
        case ModelSpace::T4:
            return T4Isometry{random_word(rng, random_size(rng, 0, static_cast<std::size_t>(2 * scale)))};
        case ModelSpace::H2xR:
            return H2xRIsometry{random_matrix(rng, scale), uniform(rng, -scale, scale)};
    }
    throw UsageError("random_isometry: bad model");
}

Point random_point_in_ball(const Point& center, Real radius, Engine& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const bool on_sphere = u(rng) < 0.5;
    const Real rho = on_sphere ? radius : radius * static_cast<Real>(u(rng));
    switch (model_of(center)) {
        case ModelSpace::E2:
        case ModelSpace::H2:
            return ray_point(center, boundary_at_visual_angle(center, uniform(rng, 0, 2 * kPi)), rho);
        case ModelSpace::T4: {
            const auto whole = static_cast<std::size_t>(std::floor(radius));
            const std::size_t steps = on_sphere ? whole : random_size(rng, 0, whole);
            std::string v = std::get<T4Point>(center).word;
            char last = 0;
            for (std::size_t i = 0; i < steps; ++i) {
                const char c = last == 0 ? random_letter(rng) : random_letter_except(rng, words::inverse_letter(last));
                v = words::multiply(v, std::string(1, c));
                last = c;
            }
            return T4Point{std::move(v)};
        }
        case ModelSpace::H2xR: {
            const auto& c = std::get<H2xRPoint>(center);
            const H2Point base = c.base;
            const auto xi = std::get<H2Boundary>(boundary_at_visual_angle(base, uniform(rng, 0, 2 * kPi)));
            return ray_point(center, H2xRBoundary{xi, uniform(rng, -kPi / 2 + 1e-6L, kPi / 2 - 1e-6L)}, rho);
        }
    }
    throw UsageError("random_point_in_ball: bad model");
}

}  // namespace cat0lab::sampling
