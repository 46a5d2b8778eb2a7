#include "cat0lab/walk.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "cat0lab/isometry.hpp"
#include "cat0lab/rng.hpp"
#include "cat0lab/words.hpp"

namespace cat0lab {

namespace {

// Rounded coordinates used to deduplicate the closure. Near-collisions that
// round differently only cost a duplicate entry.
std::string closure_key(const Isometry& g) {
    std::ostringstream out;
    out.precision(10);
    auto put = [&](Real v) { out << std::llround(v * 1e9L) << ','; };
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, E2Isometry>) {
                put(v.angle), put(v.tx), put(v.ty);
            } else if constexpr (std::is_same_v<T, H2Isometry>) {
                put(v.a), put(v.b), put(v.c), put(v.d);
            } else if constexpr (std::is_same_v<T, T4Isometry>) {
                out << v.word;
            } else {
                put(v.base.a), put(v.base.b), put(v.base.c), put(v.base.d), put(v.shift);
            }
        },
        g);
    return out.str();
}

std::vector<double> cumulative(const StepDistribution& spec) {
    std::vector<double> cdf;
    cdf.reserve(spec.atoms.size());
    long double acc = 0;
    for (const auto& a : spec.atoms) {
        acc += a.p;
        cdf.push_back(static_cast<double>(acc));
    }
    cdf.back() = 1.0;
    return cdf;
}

std::uint32_t pick(const std::vector<double>& cdf, double u) {
    std::uint32_t i = 0;
    while (i + 1 < cdf.size() && u >= cdf[i]) ++i;
    return i;
}

// Appends a reduced word to a reduced word in place.
void append_reduced(std::string& w, const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && !w.empty() && w.back() == words::inverse_letter(s[i])) {
        w.pop_back();
        ++i;
    }
    w.append(s, i, std::string::npos);
}

}  // namespace

StepDistribution validated(StepDistribution spec) {
    if (spec.atoms.empty()) throw ValidationError("step distribution: no atoms");
    long double total = 0;
    for (auto& a : spec.atoms) {
        if (model_of(a.g) != spec.model) throw ValidationError("step distribution: atom model differs from spec model");
        if (!(a.p > 0) || !std::isfinite(a.p)) throw ValidationError("step distribution: probabilities must be positive");
        total += a.p;
        a.g = normalize(a.g);
    }
    if (std::fabs(total - 1) > 1e-12L) throw ValidationError("step distribution: probabilities sum to " + std::to_string(static_cast<double>(total)));
    return spec;
}

StepDistribution uniform_distribution(const std::vector<Isometry>& gs) {
    if (gs.empty()) throw UsageError("uniform_distribution: no atoms");
    StepDistribution spec{model_of(gs.front()), {}};
    for (const auto& g : gs) spec.atoms.push_back({g, Real(1) / static_cast<Real>(gs.size())});
    return validated(std::move(spec));
}

AdmissibilityReport validate_distribution(const StepDistribution& raw, std::size_t depth, std::size_t cap) {
    const StepDistribution spec = validated(raw);
    AdmissibilityReport report;
    report.depth = depth;

    std::vector<Isometry> wanted;
    for (const auto& a : spec.atoms) wanted.push_back(inverse(a.g));
    std::vector<bool> found(wanted.size(), false);
    std::size_t missing = wanted.size();
    auto check = [&](const Isometry& e) {
        for (std::size_t i = 0; i < wanted.size(); ++i) {
            if (!found[i] && approx_equal(e, wanted[i], 1e-9L)) {
                found[i] = true;
                --missing;
            }
        }
    };

    std::set<std::string> seen;
    std::vector<Isometry> frontier;
    for (const auto& a : spec.atoms) {
        if (seen.insert(closure_key(a.g)).second) {
            frontier.push_back(a.g);
            check(a.g);
        }
    }
    for (std::size_t level = 2; level <= depth && missing > 0 && !frontier.empty(); ++level) {
        std::vector<Isometry> next;
        for (const auto& e : frontier) {
            for (const auto& a : spec.atoms) {
                if (seen.size() >= cap) {
                    report.symmetric_closure_hit = true;
                    break;
                }
                Isometry p = compose(e, a.g);
                if (seen.insert(closure_key(p)).second) {
                    check(p);
                    next.push_back(std::move(p));
                }
            }
            if (report.symmetric_closure_hit) break;
        }
        frontier = std::move(next);
        if (report.symmetric_closure_hit) break;
    }
    report.elements_reached = seen.size();
    report.certified = depth >= 1 && missing == 0;
    return report;
}

std::uint32_t draw_atom(const StepDistribution& spec, std::uint64_t seed, std::uint64_t path, std::size_t step) {
    const CounterRng rng(seed, path);
    return pick(cumulative(spec), rng.uniform(step));
}

WalkTrace sample_walk(const StepDistribution& raw, const Point& x, std::size_t n, std::uint64_t seed,
                      std::uint64_t path, std::size_t stride) {
    WalkTrace t;
    t.spec = validated(raw);
    require_same_model(t.spec.atoms.front().g, x, "sample_walk");
    t.seed = seed;
    t.path = path;
    t.basepoint = x;
    t.n = n;
    t.stride = stride == 0 ? 1 : stride;

    const CounterRng rng(seed, path);
    const auto cdf = cumulative(t.spec);
    t.increments.resize(n);
    for (std::size_t k = 0; k < n; ++k) t.increments[k] = pick(cdf, rng.uniform(k));

    const bool tree = t.spec.model == ModelSpace::T4;
    Isometry z = identity_isometry(t.spec.model);
    std::string word;  // T4 product kept as a bare string
    auto store = [&](std::size_t k) {
        if (tree) z = T4Isometry{word};
        t.steps.push_back(k);
        t.positions.push_back(cat0lab::apply(z, x));
        t.products.push_back(z);
    };
    store(0);
    for (std::size_t k = 1; k <= n; ++k) {
        const Isometry& w = t.spec.atoms[t.increments[k - 1]].g;
        if (tree) {
            append_reduced(word, std::get<T4Isometry>(w).word);
        } else {
            z = compose(z, w);
        }
        if (k % t.stride == 0 || k == n) store(k);
    }
    return t;
}

std::vector<Point> inverse_walk_positions(const WalkTrace& trace) {
    std::vector<Isometry> inv;
    for (const auto& a : trace.spec.atoms) inv.push_back(inverse(a.g));
    std::vector<Point> out;
    out.reserve(trace.n + 1);
    out.push_back(trace.basepoint);
    if (trace.spec.model == ModelSpace::T4) {
        std::string w = std::get<T4Point>(trace.basepoint).word;
        for (std::size_t k = 0; k < trace.n; ++k) {
            // omega^{-1} applied on the left
            w = words::multiply(std::get<T4Isometry>(inv[trace.increments[k]]).word, w);
            out.push_back(T4Point{w});
        }
        return out;
    }
    for (std::size_t k = 0; k < trace.n; ++k) out.push_back(cat0lab::apply(inv[trace.increments[k]], out.back()));
    return out;
}

std::vector<Isometry> all_products(const WalkTrace& trace) {
    std::vector<Isometry> out;
    out.reserve(trace.n + 1);
    out.push_back(identity_isometry(trace.spec.model));
    for (std::size_t k = 0; k < trace.n; ++k) out.push_back(compose(out.back(), trace.spec.atoms[trace.increments[k]].g));
    return out;
}

std::vector<std::pair<BoundaryPoint, Real>> pushforward_atoms(const StepDistribution& spec,
                                                              const std::vector<BoundaryPoint>& points) {
    std::vector<std::pair<BoundaryPoint, Real>> out;
    if (points.empty()) return out;
    const Real share = Real(1) / static_cast<Real>(points.size());
    for (const auto& a : spec.atoms) {
        for (const auto& xi : points) {
            require_same_model(a.g, xi, "pushforward_atoms");
            out.emplace_back(apply_boundary(a.g, xi), a.p * share);
        }
    }
    return out;
}

}  // namespace cat0lab
