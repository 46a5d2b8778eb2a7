#include "cat0lab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cat0lab/audit.hpp"
#include "cat0lab/boundary.hpp"
#include "cat0lab/geometry.hpp"
#include "cat0lab/isometry.hpp"
#include "cat0lab/rng.hpp"
#include "cat0lab/sampling.hpp"
#include "cat0lab/words.hpp"
#include "h2.hpp"

namespace cat0lab {

namespace {

std::size_t stored_index(const WalkTrace& trace, std::size_t step) {
    const auto it = std::lower_bound(trace.steps.begin(), trace.steps.end(), step);
    if (it == trace.steps.end() || *it != step) {
        throw UsageError("step " + std::to_string(step) + " is not stored in the trace (stride " +
                         std::to_string(trace.stride) + ")");
    }
    return static_cast<std::size_t>(it - trace.steps.begin());
}

bool at_basepoint(const Point& x, const Point& p) { return distance(x, p) <= kDefaultTolerance; }

// direction(x, Z_k x) at the first k >= n where the walk is away from x.
BoundaryPoint terminal_direction(const StepDistribution& spec, const Point& x, std::size_t n, std::uint64_t seed,
                                 std::uint64_t path) {
    const WalkTrace t = sample_walk(spec, x, n, seed, path, n == 0 ? 1 : n);
    if (!at_basepoint(x, t.positions.back())) return direction(x, t.positions.back());
    const WalkTrace longer = sample_walk(spec, x, n + 256, seed, path, 1);
    for (std::size_t k = n + 1; k < longer.positions.size(); ++k) {
        if (!at_basepoint(x, longer.positions[k])) return direction(x, longer.positions[k]);
    }
    throw DomainError("hitting_measure: the walk does not leave the basepoint");
}

sampling::Engine engine_for(std::uint64_t seed, std::uint64_t counter) {
    return sampling::Engine(CounterRng(seed, 0x5EEDULL).bits(counter));
}

Real wrap_circle(Real a) {
    Real t = std::fmod(a, 2 * kPi);
    if (t < 0) t += 2 * kPi;
    return t;
}

std::size_t angular_bin(Real angle, std::size_t count) {
    const auto b = static_cast<std::size_t>(std::floor(wrap_circle(angle) / (2 * kPi) * static_cast<Real>(count)));
    return std::min(b, count - 1);
}

std::size_t slope_bin(Real alpha, std::size_t count) {
    const Real u = (alpha + kPi / 2) / kPi;
    const auto b = static_cast<std::size_t>(std::floor(std::clamp(u, Real(0), Real(1)) * static_cast<Real>(count)));
    return std::min(b, count - 1);
}

Real max_pairwise(const Point& x, const std::vector<BoundaryPoint>& a, const std::vector<BoundaryPoint>& b,
                  bool same) {
    Real worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = same ? i + 1 : 0; j < b.size(); ++j) {
            worst = std::max(worst, boundary_metric(x, a[i], b[j]));
        }
    }
    return worst;
}

}  // namespace

// ---------------------------------------------------------------------------
// drift

DriftReport drift_estimate(const StepDistribution& raw, const Point& x, std::size_t n, std::size_t m_samples,
                           std::uint64_t seed, const DriftOptions& options) {
    if (n == 0 || m_samples == 0) throw UsageError("drift_estimate: n and m_samples must be positive");
    const StepDistribution spec = validated(raw);
    DriftReport r;
    r.n = n;
    r.m_samples = m_samples;
    r.admissibility = validate_distribution(spec, options.certify_depth);
    if (!r.admissibility.certified && !options.allow_uncertified) {
        throw RefusalError("drift_estimate: admissibility not certified at depth " +
                           std::to_string(options.certify_depth) + "; pass the override to run anyway");
    }
    if (options.xi) require_same_model(x, *options.xi, "drift_estimate");

    r.per_sample_terminal.assign(m_samples, 0);
    std::vector<Real> horo(m_samples, 0);
    parallel_paths(m_samples, options.threads, [&](std::size_t i) {
        const WalkTrace t = sample_walk(spec, x, n, seed, i, n);
        r.per_sample_terminal[i] = distance(x, t.positions.back()) / static_cast<Real>(n);
        if (options.xi) horo[i] = horofunction(*options.xi, x, t.positions.back()) / static_cast<Real>(n);
    });

    const Real m = static_cast<Real>(m_samples);
    r.lambda_hat = std::accumulate(r.per_sample_terminal.begin(), r.per_sample_terminal.end(), Real(0)) / m;
    Real ss = 0;
    for (Real v : r.per_sample_terminal) ss += (v - r.lambda_hat) * (v - r.lambda_hat);
    r.std_error = m_samples > 1 ? std::sqrt(ss / (m - 1)) / std::sqrt(m) : 0;
    if (options.xi) r.horofunction_lambda = std::accumulate(horo.begin(), horo.end(), Real(0)) / m;
    return r;
}

// ---------------------------------------------------------------------------
// convergence

std::vector<std::size_t> linear_checkpoints(std::size_t n, std::size_t count) {
    std::vector<std::size_t> out;
    if (n == 0 || count == 0) return out;
    count = std::min(count, n);
    for (std::size_t i = 1; i <= count; ++i) {
        const std::size_t c = (n * i) / count;
        if (out.empty() || c != out.back()) out.push_back(c);
    }
    return out;
}

ConvergenceProfile convergence_profile(const WalkTrace& trace, const std::vector<std::size_t>& checkpoints) {
    ConvergenceProfile p;
    for (std::size_t c : checkpoints) {
        const Point& pos = trace.positions[stored_index(trace, c)];
        if (at_basepoint(trace.basepoint, pos)) continue;
        p.checkpoints.push_back(c);
        p.boundary_coords.push_back(direction(trace.basepoint, pos));
    }
    const std::size_t k = p.checkpoints.size();
    p.cauchy_tail.assign(k, 0);
    for (std::size_t i = k; i-- > 0;) {
        Real worst = i + 1 < k ? p.cauchy_tail[i + 1] : 0;
        for (std::size_t j = i + 1; j < k; ++j) {
            worst = std::max(worst, boundary_metric(trace.basepoint, p.boundary_coords[i], p.boundary_coords[j]));
        }
        p.cauchy_tail[i] = worst;
    }
    return p;
}

Real tail_after(const ConvergenceProfile& profile, std::size_t step) {
    const auto it = std::lower_bound(profile.checkpoints.begin(), profile.checkpoints.end(), step);
    if (it == profile.checkpoints.end()) return std::numeric_limits<Real>::infinity();
    return profile.cauchy_tail[static_cast<std::size_t>(it - profile.checkpoints.begin())];
}

// ---------------------------------------------------------------------------
// hitting measure

BinScheme default_bins(ModelSpace model) {
    BinScheme b;
    b.model = model;
    return b;
}

std::size_t bin_count(const BinScheme& bins) {
    switch (bins.model) {
        case ModelSpace::E2:
        case ModelSpace::H2: return bins.angular_bins;
        case ModelSpace::T4: return words::count_reduced(bins.cylinder_length);
        case ModelSpace::H2xR: return bins.angular_bins * bins.slope_bins;
    }
    return 0;
}

std::size_t bin_of(const BinScheme& bins, const Point& x, const BoundaryPoint& xi_in) {
    require_same_model(x, xi_in, "bin_of");
    const BoundaryPoint xi = normalize(xi_in);
    switch (bins.model) {
        case ModelSpace::E2:
        case ModelSpace::H2:
            return angular_bin(visual_angle(x, xi), bins.angular_bins);
        case ModelSpace::T4: {
            const T4Boundary rel = words::multiply(words::inverse(std::get<T4Point>(x).word), std::get<T4Boundary>(xi));
            return words::index_of_reduced(words::take(rel, bins.cylinder_length));
        }
        case ModelSpace::H2xR: {
            const auto& b = std::get<H2xRBoundary>(xi);
            return angular_bin(visual_angle(x, xi), bins.angular_bins) * bins.slope_bins +
                   slope_bin(b.alpha, bins.slope_bins);
        }
    }
    throw UsageError("bin_of: bad model");
}

BoundaryPoint sample_in_bin(const BinScheme& bins, const Point& x, std::size_t bin, std::uint64_t seed,
                            std::uint64_t counter) {
    auto rng = engine_for(seed, counter);
    const auto within = [&](std::size_t i, std::size_t count, Real lo, Real width) {
        return lo + width * (static_cast<Real>(i) + sampling::uniform(rng, 0, 1)) / static_cast<Real>(count);
    };
    switch (bins.model) {
        case ModelSpace::E2:
        case ModelSpace::H2:
            return boundary_at_visual_angle(x, within(bin, bins.angular_bins, 0, 2 * kPi));
        case ModelSpace::T4: {
            const std::string cylinder = words::reduced_from_index(bin, bins.cylinder_length);
            const std::string ext = sampling::extend_word(rng, cylinder, 12);
            const std::string abs = words::multiply(std::get<T4Point>(x).word, ext);
            return words::normalize_infinite(abs, std::string(1, ext.back()));
        }
        case ModelSpace::H2xR: {
            const std::size_t a = bin / bins.slope_bins;
            const std::size_t s = bin % bins.slope_bins;
            const auto& base = std::get<H2xRPoint>(x).base;
            const Real theta = within(a, bins.angular_bins, 0, 2 * kPi) / 2;
            const Real margin = 1e-9L;
            const Real alpha = std::clamp(within(s, bins.slope_bins, -kPi / 2, kPi), -kPi / 2 + margin, kPi / 2 - margin);
            return H2xRBoundary{detail::h2::boundary_from_theta(base, theta), alpha};
        }
    }
    throw UsageError("sample_in_bin: bad model");
}

std::string bin_label(const BinScheme& bins, std::size_t bin) {
    switch (bins.model) {
        case ModelSpace::E2:
        case ModelSpace::H2:
            return "angle[" + std::to_string(bin) + "/" + std::to_string(bins.angular_bins) + "]";
        case ModelSpace::T4:
            return words::reduced_from_index(bin, bins.cylinder_length);
        case ModelSpace::H2xR:
            return "angle[" + std::to_string(bin / bins.slope_bins) + "/" + std::to_string(bins.angular_bins) +
                   "],slope[" + std::to_string(bin % bins.slope_bins) + "/" + std::to_string(bins.slope_bins) + "]";
    }
    return {};
}

HittingHistogram hitting_measure(const StepDistribution& raw, const Point& x, std::size_t n, std::size_t m_samples,
                                 const BinScheme& bins, std::uint64_t seed, unsigned threads) {
    if (m_samples == 0) throw UsageError("hitting_measure: m_samples must be positive");
    const StepDistribution spec = validated(raw);
    if (bins.model != spec.model) throw UsageError("hitting_measure: bin scheme model differs from spec");
    HittingHistogram h;
    h.bins = bins;
    h.basepoint = x;
    h.n = n;
    h.m_samples = m_samples;
    std::vector<std::size_t> landing(m_samples, 0);
    parallel_paths(m_samples, threads,
                   [&](std::size_t i) { landing[i] = bin_of(bins, x, terminal_direction(spec, x, n, seed, i)); });
    h.masses.assign(bin_count(bins), 0);
    for (std::size_t b : landing) h.masses[b] += 1;
    for (Real& v : h.masses) v /= static_cast<Real>(m_samples);
    return h;
}

Real stationarity_defect(const StepDistribution& raw, const HittingHistogram& hist, std::size_t refinement_samples,
                         std::uint64_t seed) {
    if (refinement_samples == 0) throw UsageError("stationarity_defect: refinement_samples must be positive");
    const StepDistribution spec = validated(raw);
    std::vector<Real> pushed(hist.masses.size(), 0);
    const Real r = static_cast<Real>(refinement_samples);
    std::uint64_t counter = 0;
    for (std::size_t b = 0; b < hist.masses.size(); ++b) {
        if (hist.masses[b] <= 0) continue;
        for (std::size_t s = 0; s < refinement_samples; ++s) {
            const BoundaryPoint xi = sample_in_bin(hist.bins, hist.basepoint, b, seed, counter++);
            for (const auto& a : spec.atoms) {
                pushed[bin_of(hist.bins, hist.basepoint, apply_boundary(a.g, xi))] += a.p * hist.masses[b] / r;
            }
        }
    }
    Real tv = 0;
    for (std::size_t b = 0; b < pushed.size(); ++b) tv += std::fabs(pushed[b] - hist.masses[b]);
    return tv / 2;
}

// ---------------------------------------------------------------------------
// Dirac concentration

DiracReport dirac_concentration(const StepDistribution& raw, const Point& x, const std::vector<BoundaryPoint>& atoms_a,
                                const std::vector<BoundaryPoint>& atoms_b, std::size_t n, std::uint64_t seed,
                                const std::vector<std::size_t>& checkpoints, std::uint64_t path) {
    if (atoms_a.size() < 2) throw UsageError("dirac_concentration: need at least two initial atoms");
    const StepDistribution spec = validated(raw);
    DiracReport r;
    r.hypotheses_ok = validate_distribution(spec, kDefaultCertifyDepth).certified &&
                      rankone_audit(spec, x).verdict == AuditVerdict::certified_non_elementary;
    const std::vector<Isometry> z = all_products(sample_walk(spec, x, n, seed, path, n == 0 ? 1 : n));
    for (std::size_t c : checkpoints) {
        if (c > n) throw UsageError("dirac_concentration: checkpoint beyond n");
        std::vector<BoundaryPoint> pa, pb;
        for (const auto& xi : atoms_a) pa.push_back(apply_boundary(z[c], xi));
        for (const auto& xi : atoms_b) pb.push_back(apply_boundary(z[c], xi));
        r.checkpoints.push_back(c);
        r.spread_a.push_back(max_pairwise(x, pa, pa, true));
        r.spread_b.push_back(pb.size() >= 2 ? max_pairwise(x, pb, pb, true) : 0);
        r.cross_spread.push_back(pb.empty() ? 0 : max_pairwise(x, pa, pb, false));
    }
    return r;
}

// ---------------------------------------------------------------------------
// horofunctions along the walk

GapSeries horofunction_gap(const WalkTrace& trace, const BoundaryPoint& xi) {
    GapSeries g;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const Point& z = trace.positions[i];
        const Real gap = std::fabs(horofunction(xi, trace.basepoint, z) - distance(trace.basepoint, z));
        g.steps.push_back(trace.steps[i]);
        g.gap_series.push_back(gap);
        g.sup_gap = std::max(g.sup_gap, gap);
    }
    return g;
}

Real theil_sen_slope(const std::vector<Real>& xs, const std::vector<Real>& ys) {
    if (xs.size() != ys.size()) throw UsageError("theil_sen_slope: size mismatch");
    std::vector<Real> slopes;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (xs[j] != xs[i]) slopes.push_back((ys[j] - ys[i]) / (xs[j] - xs[i]));
        }
    }
    if (slopes.empty()) return 0;
    const std::size_t mid = slopes.size() / 2;
    std::nth_element(slopes.begin(), slopes.begin() + static_cast<std::ptrdiff_t>(mid), slopes.end());
    Real med = slopes[mid];
    if (slopes.size() % 2 == 0) {
        med = (med + *std::max_element(slopes.begin(), slopes.begin() + static_cast<std::ptrdiff_t>(mid))) / 2;
    }
    return med;
}

Real cocycle_residual(const Isometry& g1, const Isometry& g2, const BoundaryPoint& xi, const Point& x) {
    require_same_model(g1, g2, "cocycle_residual");
    require_same_model(g1, xi, "cocycle_residual");
    require_same_model(g1, x, "cocycle_residual");
    const Real lhs = horofunction(xi, x, cat0lab::apply(compose(g1, g2), x));
    const Real rhs = horofunction(apply_boundary(inverse(g1), xi), x, cat0lab::apply(g2, x)) +
                     horofunction(xi, x, cat0lab::apply(g1, x));
    return std::fabs(lhs - rhs);
}

std::vector<Real> transient_cocycle_series(const WalkTrace& trace, const BoundaryPoint& xi) {
    require_same_model(trace.basepoint, xi, "transient_cocycle_series");
    const Point& x = trace.basepoint;
    std::vector<Point> moved;
    std::vector<Isometry> inv;
    for (const auto& a : trace.spec.atoms) {
        moved.push_back(cat0lab::apply(a.g, x));
        inv.push_back(inverse(a.g));
    }
    std::vector<Real> out{0};
    out.reserve(trace.n + 1);
    BoundaryPoint eta = normalize(xi);  // Z_{j-1}^{-1} xi
    Real sum = 0;
    for (std::size_t j = 0; j < trace.n; ++j) {
        const std::uint32_t i = trace.increments[j];
        sum += horofunction(eta, x, moved[i]);
        out.push_back(sum);
        eta = apply_boundary(inv[i], eta);
    }
    return out;
}

// ---------------------------------------------------------------------------
// tracking

namespace {

// Coordinates cannot resolve a far point sitting next to the ray, so the
// Busemann value toward xi_hat is rebuilt as a sum of O(1) terms along the
// walk, with Z_j^{-1} xi_hat obtained by running the boundary recursion
// backward from Z_N^{-1} xi_hat.
std::vector<Real> h2_tracking(const WalkTrace& trace, Real lambda, const std::vector<std::size_t>& checkpoints) {
    const auto& x = std::get<H2Point>(trace.basepoint);
    const std::size_t N = trace.n;
    const std::vector<Point> back = inverse_walk_positions(trace);
    const auto far = std::get<H2Point>(back.back());
    if (detail::h2::distance(x, far) <= kDefaultTolerance) throw DomainError("tracking_error: Z_N x equals x");
    // Z_N^{-1} xi_hat is the endpoint of the ray from Z_N^{-1} x through x.
    H2Boundary eta = detail::h2::boundary_from_theta(x, detail::h2::point_theta(x, far) + kPi / 2);

    std::vector<H2Isometry> atoms;
    std::vector<H2Point> moved;
    for (const auto& a : trace.spec.atoms) {
        atoms.push_back(std::get<H2Isometry>(a.g));
        moved.push_back(detail::h2::apply(atoms.back(), x));
    }
    std::vector<H2Boundary> etas(N + 1);
    etas[N] = eta;
    for (std::size_t j = N; j >= 1; --j) etas[j - 1] = detail::h2::apply(atoms[trace.increments[j - 1]], etas[j]);
    std::vector<Real> h(N + 1, 0);
    for (std::size_t j = 1; j <= N; ++j) {
        h[j] = h[j - 1] + detail::h2::busemann(etas[j - 1], x, moved[trace.increments[j - 1]]);
    }

    std::vector<Real> out;
    for (std::size_t k : checkpoints) {
        if (k == 0 || k > N) throw UsageError("tracking_error: checkpoints must lie in [1, n]");
        const auto& z = std::get<H2Point>(trace.positions[stored_index(trace, k)]);
        const Real a = detail::h2::distance(x, z);
        const Real s = lambda * static_cast<Real>(k);
        out.push_back(detail::h2::ray_distance_from_busemann(s, a, h[k]) / static_cast<Real>(k));
    }
    return out;
}

}  // namespace

std::vector<Real> tracking_error(const WalkTrace& trace, Real lambda, const std::vector<std::size_t>& checkpoints) {
    if (!(lambda > 0)) throw DomainError("tracking_error: lambda must be positive");
    if (trace.n == 0) throw DomainError("tracking_error: empty trace");
    if (trace.spec.model == ModelSpace::H2) return h2_tracking(trace, lambda, checkpoints);

    const Point& x = trace.basepoint;
    if (at_basepoint(x, trace.positions.back())) throw DomainError("tracking_error: Z_N x equals x");
    const BoundaryPoint xi_hat = direction(x, trace.positions.back());
    std::vector<Real> out;
    for (std::size_t k : checkpoints) {
        if (k == 0 || k > trace.n) throw UsageError("tracking_error: checkpoints must lie in [1, n]");
        Real t = lambda * static_cast<Real>(k);
        if (trace.spec.model == ModelSpace::T4) t = std::round(t);
        const Point& z = trace.positions[stored_index(trace, k)];
        out.push_back(distance(ray_point(x, xi_hat, t), z) / static_cast<Real>(k));
    }
    return out;
}

// ---------------------------------------------------------------------------
// pi-convergence

PiConvergenceResult pi_convergence_check(const std::vector<Isometry>& gs, const Point& x,
                                         const std::vector<BoundaryPoint>& K, Real u_eps,
                                         std::optional<std::pair<BoundaryPoint, BoundaryPoint>> limits, Real tol) {
    if (gs.empty()) throw UsageError("pi_convergence_check: empty sequence");
    if (!(u_eps > 0)) throw UsageError("pi_convergence_check: U_eps must be positive");
    PiConvergenceResult r;
    if (limits) {
        r.forward_limit = normalize(limits->first, tol);
        r.backward_limit = normalize(limits->second, tol);
    } else {
        const Point fwd = cat0lab::apply(gs.back(), x);
        const Point bwd = cat0lab::apply(inverse(gs.back()), x);
        if (at_basepoint(x, fwd) || at_basepoint(x, bwd)) {
            throw DomainError("pi_convergence_check: cannot detect the limits of g_n x; supply them");
        }
        r.forward_limit = direction(x, fwd, tol);
        r.backward_limit = direction(x, bwd, tol);
    }
    for (const auto& kappa : K) {
        const TitsValue d = tits_distance(r.backward_limit, kappa, tol);
        if (!d.infinite && d.value < kPi - tol) {
            throw DomainError("pi_convergence_check: K meets the open Tits ball of radius pi about the backward limit");
        }
    }
    const std::size_t N = gs.size();
    std::vector<bool> ok(N);
    for (std::size_t i = 0; i < N; ++i) {
        bool all = true;
        for (const auto& kappa : K) {
            if (!(boundary_metric(x, apply_boundary(gs[i], kappa), r.forward_limit) < u_eps)) {
                all = false;
                break;
            }
        }
        ok[i] = all;
    }
    if (!ok[N - 1]) {
        r.holds = false;
        r.n0 = N;
        return r;
    }
    std::size_t first = N - 1;
    while (first > 0 && ok[first - 1]) --first;
    r.holds = true;
    r.n0 = first + 1;
    return r;
}

}  // namespace cat0lab
