#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cat0lab/walk.hpp"

namespace cat0lab {

/// Raised when a limit-law estimator is asked to run on a step
/// distribution whose hypotheses could not be certified.
class RefusalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultCertifyDepth = 6;

struct DriftOptions {
    std::optional<BoundaryPoint> xi;  // also estimate lim h_xi(Z_n x)/n
    bool allow_uncertified = false;
    std::size_t certify_depth = kDefaultCertifyDepth;
    unsigned threads = 1;
};

struct DriftReport {
    std::size_t n = 0;
    std::size_t m_samples = 0;
    Real lambda_hat = 0;
    Real std_error = 0;
    std::vector<Real> per_sample_terminal;  // d(Z_n x, x)/n per path
    std::optional<Real> horofunction_lambda;
    AdmissibilityReport admissibility;
};

DriftReport drift_estimate(const StepDistribution& spec, const Point& x, std::size_t n, std::size_t m_samples,
                           std::uint64_t seed, const DriftOptions& options = {});

/// 0 < c_1 < ... < c_count = n, evenly spaced.
std::vector<std::size_t> linear_checkpoints(std::size_t n, std::size_t count);

struct ConvergenceProfile {
    std::vector<std::size_t> checkpoints;
    std::vector<BoundaryPoint> boundary_coords;
    std::vector<Real> cauchy_tail;
};

/// Checkpoints must be stored steps of the trace; ones where Z_k x = x are skipped.
ConvergenceProfile convergence_profile(const WalkTrace& trace, const std::vector<std::size_t>& checkpoints);

/// cauchy_tail at the first checkpoint >= step, i.e. the boundary_metric
/// diameter of the directions over [step, n]. Infinity if there is none.
Real tail_after(const ConvergenceProfile& profile, std::size_t step);

struct BinScheme {
    ModelSpace model = ModelSpace::E2;
    std::size_t angular_bins = 16;   // E2, H2 and the H2 factor of H2xR
    std::size_t cylinder_length = 2; // T4
    std::size_t slope_bins = 4;      // H2xR
};

BinScheme default_bins(ModelSpace model);
std::size_t bin_count(const BinScheme& bins);
/// Bin of xi as seen from x.
std::size_t bin_of(const BinScheme& bins, const Point& x, const BoundaryPoint& xi);
/// A point of the bin drawn uniformly (angle, cylinder extension, slope).
BoundaryPoint sample_in_bin(const BinScheme& bins, const Point& x, std::size_t bin, std::uint64_t seed,
                            std::uint64_t counter);
std::string bin_label(const BinScheme& bins, std::size_t bin);

struct HittingHistogram {
    BinScheme bins;
    Point basepoint;
    std::vector<Real> masses;
    std::size_t n = 0;
    std::size_t m_samples = 0;
};

HittingHistogram hitting_measure(const StepDistribution& spec, const Point& x, std::size_t n, std::size_t m_samples,
                                 const BinScheme& bins, std::uint64_t seed, unsigned threads = 1);

/// Total variation between the histogram and mu pushed forward onto it.
Real stationarity_defect(const StepDistribution& spec, const HittingHistogram& hist, std::size_t refinement_samples,
                         std::uint64_t seed = 0);

struct DiracReport {
    std::vector<std::size_t> checkpoints;
    std::vector<Real> spread_a;
    std::vector<Real> spread_b;
    std::vector<Real> cross_spread;
    bool hypotheses_ok = false;
};

DiracReport dirac_concentration(const StepDistribution& spec, const Point& x, const std::vector<BoundaryPoint>& atoms_a,
                                const std::vector<BoundaryPoint>& atoms_b, std::size_t n, std::uint64_t seed,
                                const std::vector<std::size_t>& checkpoints, std::uint64_t path = 0);

struct GapSeries {
    std::vector<std::size_t> steps;
    std::vector<Real> gap_series;
    Real sup_gap = 0;
};

/// |h_xi(Z_k x) - d(x, Z_k x)| over the stored steps.
GapSeries horofunction_gap(const WalkTrace& trace, const BoundaryPoint& xi);

/// Median of pairwise slopes.
Real theil_sen_slope(const std::vector<Real>& xs, const std::vector<Real>& ys);

Real cocycle_residual(const Isometry& g1, const Isometry& g2, const BoundaryPoint& xi, const Point& x);

/// sum_{j<=k} h_{Z_{j-1}^{-1} xi}(omega_j x) for k = 0..n.
std::vector<Real> transient_cocycle_series(const WalkTrace& trace, const BoundaryPoint& xi);

/// d(ray_point(x, xi_hat, lambda k), Z_k x)/k at the checkpoints, with xi_hat
/// the direction of the last stored position. T4 rounds lambda k to a vertex.
std::vector<Real> tracking_error(const WalkTrace& trace, Real lambda, const std::vector<std::size_t>& checkpoints);

struct PiConvergenceResult {
    bool holds = false;
    std::size_t n0 = 0;  // 1-based; the list length when it never holds
    BoundaryPoint forward_limit;
    BoundaryPoint backward_limit;
};

PiConvergenceResult pi_convergence_check(const std::vector<Isometry>& gs, const Point& x,
                                         const std::vector<BoundaryPoint>& K, Real u_eps,
                                         std::optional<std::pair<BoundaryPoint, BoundaryPoint>> limits = std::nullopt,
                                         Real tol = kDefaultTolerance);

}  // namespace cat0lab
