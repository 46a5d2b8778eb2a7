#include "cat0lab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>

#include "cat0lab/boundary.hpp"
#include "cat0lab/geometry.hpp"
#include "cat0lab/isometry.hpp"
#include "cat0lab/rng.hpp"
#include "cat0lab/sampling.hpp"

#ifndef CAT0LAB_VERSION
#define CAT0LAB_VERSION "0.0.0"
#endif

namespace cat0lab {

using io::Json;

namespace {

double num(Real v) { return static_cast<double>(v); }

std::size_t count_at(const Json& j, const char* key, std::size_t fallback, bool positive = true) {
    if (!j.contains(key)) return fallback;
    const Json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0 || (positive && v.get<long long>() == 0)) {
        throw ValidationError(std::string("\"") + key + "\" must be a " + (positive ? "positive" : "nonnegative") + " integer");
    }
    return v.get<std::size_t>();
}

Real real_param(const Json& j, const char* key, Real fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ValidationError(std::string("\"") + key + "\" must be a number");
    return static_cast<Real>(j.at(key).get<double>());
}

sampling::Engine engine(std::uint64_t seed, std::uint64_t stream) {
    return sampling::Engine(CounterRng(seed, 0xC0F16ULL).bits(stream));
}

struct Run {
    Run(const Json& c, RunOptions o) : config(c), options(o) {}

    const Json& config;
    RunOptions options;
    std::string experiment;
    ModelSpace model = ModelSpace::E2;
    std::optional<StepDistribution> spec;
    Point x;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    Json params = Json::object();
    std::vector<std::size_t> checkpoints;

    const StepDistribution& distribution() const {
        if (!spec) throw ValidationError("experiment '" + experiment + "' needs a \"distribution\"");
        return *spec;
    }

    std::size_t stride() const {
        std::size_t g = n;
        for (std::size_t c : checkpoints) g = std::gcd(g, c);
        return g == 0 ? 1 : g;
    }

    WalkTrace trace(std::size_t path) const { return sample_walk(distribution(), x, n, seed, path, stride()); }

    Isometry isometry_param(const char* key) const {
        if (!params.contains(key)) throw ValidationError(std::string("params.") + key + " is required");
        return io::isometry_from_json(params.at(key), model);
    }

    std::optional<BoundaryPoint> boundary_param(const char* key) const {
        if (!params.contains(key)) return std::nullopt;
        return io::boundary_from_json(model, params.at(key));
    }

    std::vector<BoundaryPoint> boundary_list(const char* key, std::size_t fallback_count, std::uint64_t stream) const {
        std::vector<BoundaryPoint> out;
        if (params.contains(key)) {
            const Json& list = params.at(key);
            if (!list.is_array()) throw ValidationError(std::string("params.") + key + " must be an array");
            for (const auto& v : list) out.push_back(io::boundary_from_json(model, v));
            return out;
        }
        auto rng = engine(seed, stream);
        for (std::size_t i = 0; i < fallback_count; ++i) out.push_back(sampling::random_boundary(model, rng));
        return out;
    }
};

using Result = std::pair<Json, std::string>;

Json fraction_json(std::size_t hits, std::size_t total) {
    return Json{{"count", hits}, {"of", total}, {"fraction", total ? double(hits) / double(total) : 0.0}};
}

Result run_drift(const Run& r) {
    DriftOptions o;
    o.xi = r.boundary_param("xi");
    o.allow_uncertified = r.options.allow_uncertified;
    o.certify_depth = count_at(r.params, "certify_depth", kDefaultCertifyDepth);
    o.threads = r.options.threads;
    const DriftReport d = drift_estimate(r.distribution(), r.x, r.n, r.m, r.seed, o);
    std::ostringstream csv;
    csv.precision(17);
    csv << "path,terminal\n";
    for (std::size_t i = 0; i < d.per_sample_terminal.size(); ++i) csv << i << ',' << num(d.per_sample_terminal[i]) << '\n';
    Json j = io::to_json(d);
    j.erase("admissibility");
    return {j, csv.str()};
}

Result run_converge(const Run& r) {
    const std::size_t from = count_at(r.params, "tail_from", r.n / 2, false);
    const Real threshold = real_param(r.params, "threshold", 1e-2L);
    std::vector<Real> tails(r.m);
    ConvergenceProfile first;
    parallel_paths(r.m, r.options.threads, [&](std::size_t i) {
        ConvergenceProfile p = convergence_profile(r.trace(i), r.checkpoints);
        tails[i] = tail_after(p, from);
        if (i == 0) first = std::move(p);
    });
    std::size_t settled = 0;
    Json list = Json::array();
    for (Real t : tails) {
        settled += t <= threshold;
        list.push_back(num(t));
    }
    std::ostringstream csv;
    csv.precision(17);
    csv << "step,cauchy_tail\n";
    for (std::size_t i = 0; i < first.checkpoints.size(); ++i) csv << first.checkpoints[i] << ',' << num(first.cauchy_tail[i]) << '\n';
    return {Json{{"tail_from", from}, {"threshold", num(threshold)}, {"settled", fraction_json(settled, r.m)},
                 {"tails", list}, {"profile_path0", io::to_json(first)}},
            csv.str()};
}

BinScheme bins_from(const Run& r) {
    BinScheme b = default_bins(r.model);
    const Json bins = r.params.value("bins", Json::object());
    b.angular_bins = count_at(bins, "angular_bins", b.angular_bins);
    b.cylinder_length = count_at(bins, "cylinder_length", b.cylinder_length);
    b.slope_bins = count_at(bins, "slope_bins", b.slope_bins);
    return b;
}

std::string histogram_csv(const HittingHistogram& h) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "bin,label,mass\n";
    for (std::size_t b = 0; b < h.masses.size(); ++b) csv << b << ',' << bin_label(h.bins, b) << ',' << num(h.masses[b]) << '\n';
    return csv.str();
}

Result run_hitting(const Run& r) {
    const HittingHistogram h = hitting_measure(r.distribution(), r.x, r.n, r.m, bins_from(r), r.seed, r.options.threads);
    return {io::to_json(h), histogram_csv(h)};
}

Result run_stationarity(const Run& r) {
    const HittingHistogram h = hitting_measure(r.distribution(), r.x, r.n, r.m, bins_from(r), r.seed, r.options.threads);
    const std::size_t refine = count_at(r.params, "refinement_samples", 64);
    const Real defect = stationarity_defect(r.distribution(), h, refine, r.seed);
    return {Json{{"defect", num(defect)}, {"refinement_samples", refine}, {"histogram", io::to_json(h)}},
            histogram_csv(h)};
}

Result run_dirac(const Run& r) {
    const std::size_t size = count_at(r.params, "atoms", 10);
    const auto a = r.boundary_list("atoms_a", size, 1);
    const auto b = r.boundary_list("atoms_b", size, 2);
    const Real threshold = real_param(r.params, "threshold", 1e-3L);
    std::vector<DiracReport> reports(r.m);
    parallel_paths(r.m, r.options.threads, [&](std::size_t i) {
        reports[i] = dirac_concentration(r.distribution(), r.x, a, b, r.n, r.seed, r.checkpoints, i);
    });
    std::size_t ok = 0;
    Json finals = Json::array();
    for (const auto& d : reports) {
        const Real within = std::max(d.spread_a.back(), d.spread_b.back());
        const Real cross = d.cross_spread.back();
        ok += within <= threshold && cross <= threshold;
        finals.push_back(Json{{"within", num(within)}, {"cross", num(cross)}});
    }
    std::ostringstream csv;
    csv.precision(17);
    csv << "step,spread_a,spread_b,cross_spread\n";
    const auto& d0 = reports.front();
    for (std::size_t i = 0; i < d0.checkpoints.size(); ++i) {
        csv << d0.checkpoints[i] << ',' << num(d0.spread_a[i]) << ',' << num(d0.spread_b[i]) << ',' << num(d0.cross_spread[i]) << '\n';
    }
    return {Json{{"hypotheses_ok", d0.hypotheses_ok}, {"threshold", num(threshold)}, {"concentrated", fraction_json(ok, r.m)},
                 {"final", finals}, {"path0", io::to_json(d0)}},
            csv.str()};
}

Result run_gap(const Run& r) {
    const auto xi_opt = r.boundary_param("xi");
    const BoundaryPoint xi = xi_opt ? *xi_opt : r.boundary_list("none", 1, 3).front();
    const std::size_t from = count_at(r.params, "slope_from", r.n / 10, false);
    const Real tol = real_param(r.params, "slope_tolerance", 1e-6L);
    std::vector<GapSeries> gaps(r.m);
    std::vector<Real> slopes(r.m);
    parallel_paths(r.m, r.options.threads, [&](std::size_t i) {
        gaps[i] = horofunction_gap(r.trace(i), xi);
        std::vector<Real> xs, ys;
        for (std::size_t k = 0; k < gaps[i].steps.size(); ++k) {
            if (gaps[i].steps[k] < from) continue;
            xs.push_back(static_cast<Real>(gaps[i].steps[k]));
            ys.push_back(gaps[i].gap_series[k]);
        }
        slopes[i] = theil_sen_slope(xs, ys);
    });
    std::size_t flat = 0;
    Json per = Json::array();
    for (std::size_t i = 0; i < r.m; ++i) {
        flat += slopes[i] <= tol;
        per.push_back(Json{{"slope", num(slopes[i])}, {"sup_gap", num(gaps[i].sup_gap)}});
    }
    std::ostringstream csv;
    csv.precision(17);
    csv << "step,gap\n";
    for (std::size_t k = 0; k < gaps.front().steps.size(); ++k) csv << gaps.front().steps[k] << ',' << num(gaps.front().gap_series[k]) << '\n';
    return {Json{{"xi", io::to_json(xi)}, {"slope_from", from}, {"slope_tolerance", num(tol)},
                 {"no_growth", fraction_json(flat, r.m)}, {"paths", per}},
            csv.str()};
}

Result run_track(const Run& r) {
    const Real lambda = real_param(r.params, "lambda", 0);
    if (!(lambda > 0)) throw ValidationError("params.lambda must be a positive number");
    const Real threshold = real_param(r.params, "threshold", 0.05L);
    std::vector<std::vector<Real>> errors(r.m);
    parallel_paths(r.m, r.options.threads, [&](std::size_t i) { errors[i] = tracking_error(r.trace(i), lambda, r.checkpoints); });
    std::size_t ok = 0;
    Json finals = Json::array();
    for (const auto& e : errors) {
        ok += e.back() <= threshold;
        finals.push_back(num(e.back()));
    }
    std::ostringstream csv;
    csv.precision(17);
    csv << "step,error\n";
    for (std::size_t k = 0; k < r.checkpoints.size(); ++k) csv << r.checkpoints[k] << ',' << num(errors.front()[k]) << '\n';
    return {Json{{"lambda", num(lambda)}, {"threshold", num(threshold)}, {"tracked", fraction_json(ok, r.m)},
                 {"final_errors", finals}},
            csv.str()};
}

Result run_cocycle(const Run& r) {
    const Real scale = real_param(r.params, "scale", 2);
    auto rng = engine(r.seed, 4);
    Real worst = 0, total = 0;
    for (std::size_t i = 0; i < r.m; ++i) {
        const Isometry g1 = sampling::random_isometry(r.model, rng, scale);
        const Isometry g2 = sampling::random_isometry(r.model, rng, scale);
        const BoundaryPoint xi = sampling::random_boundary(r.model, rng);
        const Point x = sampling::random_point(r.model, rng, scale);
        const Real res = cocycle_residual(g1, g2, xi, x);
        worst = std::max(worst, res);
        total += res;
    }
    return {Json{{"samples", r.m}, {"max_residual", num(worst)}, {"mean_residual", num(total / static_cast<Real>(r.m))}}, {}};
}

Result run_northsouth(const Run& r) {
    const Isometry g = r.isometry_param("isometry");
    const Real eps_plus = real_param(r.params, "eps_plus", 0.01L);
    const Real eps_minus = real_param(r.params, "eps_minus", 0.1L);
    const std::size_t samples = count_at(r.params, "samples", 200);
    const std::size_t cap = count_at(r.params, "cap", kNorthSouthCap);
    const NorthSouthResult a = north_south_constant(g, r.x, eps_plus, eps_minus, samples, r.seed, cap);
    const NorthSouthResult b = north_south_constant(compose(g, g), r.x, eps_plus, eps_minus, samples, r.seed, cap);
    return {Json{{"eps_plus", num(eps_plus)}, {"eps_minus", num(eps_minus)}, {"samples", samples},
                 {"k0", a.k0}, {"overflow", a.overflow}, {"k0_square", b.k0}, {"overflow_square", b.overflow}},
            {}};
}

Result run_pi(const Run& r) {
    const Isometry g = r.isometry_param("isometry");
    const std::size_t powers = count_at(r.params, "powers", 60);
    const Real u_eps = real_param(r.params, "u_eps", 0.01L);
    std::vector<Isometry> gs;
    Isometry p = g;
    for (std::size_t k = 0; k < powers; ++k) {
        gs.push_back(p);
        p = compose(p, g);
    }
    std::vector<BoundaryPoint> K;
    if (r.params.contains("K")) {
        K = r.boundary_list("K", 0, 5);
    } else {
        const AxisEndpoints ends = axis_endpoints(g);
        const Real margin = real_param(r.params, "k_margin", 0.05L);
        const std::size_t count = count_at(r.params, "k_count", 50);
        auto rng = engine(r.seed, 5);
        while (K.size() < count) {
            BoundaryPoint k = sampling::random_boundary(r.model, rng);
            if (boundary_metric(r.x, k, ends.repelling) >= margin) K.push_back(std::move(k));
        }
    }
    const PiConvergenceResult res = pi_convergence_check(gs, r.x, K, u_eps);
    Json j = io::to_json(res);
    j["u_eps"] = num(u_eps);
    j["K_size"] = K.size();
    return {j, {}};
}

std::vector<BoundaryPoint> tits_grid(ModelSpace model, std::size_t size, sampling::Engine& rng) {
    std::vector<BoundaryPoint> out;
    for (std::size_t i = 0; i < size; ++i) {
        const Real a = 2 * kPi * static_cast<Real>(i) / static_cast<Real>(size);
        switch (model) {
            case ModelSpace::E2: out.push_back(E2Boundary{a}); break;
            case ModelSpace::H2: out.push_back(boundary_at_visual_angle(H2Point{0, 1}, a)); break;
            case ModelSpace::T4: out.push_back(sampling::random_boundary(model, rng)); break;
            case ModelSpace::H2xR: {
                const auto xi = std::get<H2Boundary>(boundary_at_visual_angle(H2Point{0, 1}, 2 * a));
                const Real alpha = -kPi / 2 + kPi * (static_cast<Real>(i) + Real(0.5)) / static_cast<Real>(size);
                out.push_back(H2xRBoundary{xi, alpha});
                break;
            }
        }
    }
    return out;
}

Result run_tits_table(const Run& r) {
    const std::size_t size = count_at(r.params, "grid", 6);
    std::vector<ModelSpace> models{ModelSpace::E2, ModelSpace::H2, ModelSpace::T4, ModelSpace::H2xR};
    if (r.params.contains("models")) {
        models.clear();
        for (const auto& m : r.params.at("models")) models.push_back(parse_model(m.get<std::string>()));
    }
    auto rng = engine(r.seed, 6);
    Json tables = Json::object();
    std::ostringstream csv;
    csv.precision(17);
    csv << "model,i,j,tits\n";
    for (ModelSpace model : models) {
        const auto grid = tits_grid(model, size, rng);
        Json pts = Json::array(), rows = Json::array();
        for (const auto& xi : grid) pts.push_back(io::to_json(xi));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            Json row = Json::array();
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const TitsValue t = tits_distance(grid[i], grid[j]);
                row.push_back(io::to_json(t));
                csv << to_string(model) << ',' << i << ',' << j << ',' << (t.infinite ? std::string("inf") : std::to_string(num(t.value))) << '\n';
            }
            rows.push_back(row);
        }
        tables[std::string(to_string(model))] =
            Json{{"points", pts}, {"tits", rows}, {"ball_trivial", tits_ball_is_trivial(grid.front())}};
    }
    return {tables, csv.str()};
}

Result run_audit(const Run& r) { return {io::to_json(rankone_audit(r.distribution(), r.x)), {}}; }

using Handler = Result (*)(const Run&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> table{
        {"drift", run_drift},     {"converge", run_converge},   {"hitting", run_hitting},
        {"stationarity", run_stationarity}, {"dirac", run_dirac}, {"gap", run_gap},
        {"cocycle", run_cocycle}, {"track", run_track},         {"northsouth", run_northsouth},
        {"pi-convergence", run_pi}, {"tits-table", run_tits_table}, {"rankone-audit", run_audit},
    };
    return table;
}

bool needs_distribution(std::string_view e) {
    return is_limit_law_check(e) || e == "rankone-audit";
}

}  // namespace

std::string_view library_version() { return CAT0LAB_VERSION; }

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& h : handlers()) out.push_back(h.first);
        return out;
    }();
    return names;
}

bool is_limit_law_check(std::string_view e) {
    return e == "drift" || e == "converge" || e == "hitting" || e == "stationarity" || e == "dirac" || e == "gap" ||
           e == "track";
}

ExperimentOutput run_experiment(const Json& config, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    if (!config.is_object()) throw ValidationError("config must be a JSON object");
    if (config.contains("schema") && config.at("schema") != kConfigSchema) {
        throw ValidationError(std::string("unsupported config schema (expected ") + kConfigSchema + ")");
    }
    if (!config.contains("experiment") || !config.at("experiment").is_string()) {
        throw ValidationError("config: \"experiment\" is required");
    }
    Run r(config, options);
    r.experiment = config.at("experiment").get<std::string>();
    Handler handler = nullptr;
    for (const auto& h : handlers()) {
        if (h.first == r.experiment) handler = h.second;
    }
    if (!handler) throw ValidationError("config: unknown experiment '" + r.experiment + "'");

    if (config.contains("distribution")) {
        r.spec = io::distribution_from_json(config.at("distribution"));
        r.model = r.spec->model;
        if (config.contains("model") && parse_model(config.at("model").get<std::string>()) != r.model) {
            throw ValidationError("config: \"model\" differs from the distribution's model");
        }
    } else if (config.contains("model") && config.at("model").is_string()) {
        r.model = parse_model(config.at("model").get<std::string>());
    } else if (r.experiment != "tits-table") {
        throw ValidationError("config: \"model\" or \"distribution\" is required");
    }
    if (needs_distribution(r.experiment) && !r.spec) {
        throw ValidationError("config: experiment '" + r.experiment + "' needs a \"distribution\"");
    }
    r.x = config.contains("basepoint") ? io::point_from_json(r.model, config.at("basepoint")) : default_basepoint(r.model);
    r.n = count_at(config, "n", 1000);
    r.m = count_at(config, "m_samples", 100);
    if (config.contains("seed") && !(config.at("seed").is_number_unsigned() ||
                                     (config.at("seed").is_number_integer() && config.at("seed").get<long long>() >= 0))) {
        throw ValidationError("\"seed\" must be a nonnegative integer");
    }
    r.seed = config.contains("seed") ? config.at("seed").get<std::uint64_t>() : 0;
    if (config.contains("params")) {
        if (!config.at("params").is_object()) throw ValidationError("\"params\" must be an object");
        r.params = config.at("params");
    }
    if (config.contains("checkpoints") && config.at("checkpoints").is_array()) {
        for (const auto& c : config.at("checkpoints")) {
            if (!c.is_number_unsigned() || c.get<std::size_t>() == 0 || c.get<std::size_t>() > r.n) {
                throw ValidationError("checkpoints must be integers in [1, n]");
            }
            r.checkpoints.push_back(c.get<std::size_t>());
        }
        std::sort(r.checkpoints.begin(), r.checkpoints.end());
        r.checkpoints.erase(std::unique(r.checkpoints.begin(), r.checkpoints.end()), r.checkpoints.end());
    } else {
        r.checkpoints = linear_checkpoints(r.n, count_at(config, "checkpoints", 100));
    }

    Json hypotheses = nullptr;
    if (r.spec) {
        const AdmissibilityReport adm = validate_distribution(*r.spec, count_at(r.params, "certify_depth", kDefaultCertifyDepth));
        const RankOneAudit audit = rankone_audit(*r.spec, r.x);
        hypotheses = Json{{"admissibility", io::to_json(adm)},
                          {"rank_one_audit", io::to_json(audit)},
                          {"hypotheses_ok", adm.certified && audit.verdict == AuditVerdict::certified_non_elementary}};
        if (is_limit_law_check(r.experiment) && !adm.certified && !options.allow_uncertified) {
            throw RefusalError("admissibility not certified at depth " + std::to_string(adm.depth) +
                               "; rerun with --allow-uncertified to proceed");
        }
    }

    const Result result = handler(r);
    ExperimentOutput out;
    out.experiment = r.experiment;
    out.seed = r.seed;
    out.series_csv = result.second;
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.report = Json{{"schema", kReportSchema},
                      {"library_version", std::string(library_version())},
                      {"experiment", r.experiment},
                      {"config", config},
                      {"hypotheses", hypotheses},
                      {"result", result.first},
                      {"timing", Json{{"wall_clock_seconds", wall}}}};
    return out;
}

std::filesystem::path write_outputs(const ExperimentOutput& out, const std::filesystem::path& outdir) {
    const std::filesystem::path dir = outdir / (out.experiment + "-" + std::to_string(out.seed));
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "report.json");
        f << out.report.dump(2) << '\n';
        if (!f) throw std::runtime_error("cannot write " + (dir / "report.json").string());
    }
    if (!out.series_csv.empty()) {
        std::ofstream f(dir / "series.csv");
        f << out.series_csv;
        if (!f) throw std::runtime_error("cannot write " + (dir / "series.csv").string());
    }
    return dir;
}

std::string report_without_timing(const Json& report) {
    Json copy = report;
    copy.erase("timing");
    return copy.dump(2);
}

}  // namespace cat0lab
