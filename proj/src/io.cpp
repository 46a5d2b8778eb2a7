#include "cat0lab/io.hpp"

#include <cmath>
#include <ostream>

#include "cat0lab/geometry.hpp"
#include "cat0lab/isometry.hpp"

namespace cat0lab::io {

namespace {

double num(Real v) { return static_cast<double>(v); }

Real real_at(const Json& j, const char* what) {
    if (!j.is_number()) throw ValidationError(std::string(what) + ": expected a number");
    return static_cast<Real>(j.get<double>());
}

Json pair_json(Real a, Real b) { return Json::array({num(a), num(b)}); }

Json matrix_json(const H2Isometry& m) { return Json::array({pair_json(m.a, m.b), pair_json(m.c, m.d)}); }

H2Isometry matrix_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2) {
        throw ValidationError("H2 isometry: expected [[a, b], [c, d]]");
    }
    return {real_at(j[0][0], "H2 isometry"), real_at(j[0][1], "H2 isometry"), real_at(j[1][0], "H2 isometry"),
            real_at(j[1][1], "H2 isometry")};
}

H2Point h2_point_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ValidationError("H2 point: expected [x, y]");
    return {real_at(j[0], "H2 point"), real_at(j[1], "H2 point")};
}

Json h2_boundary_json(const H2Boundary& b) { return b.at_infinity ? Json("inf") : Json(num(b.value)); }

H2Boundary h2_boundary_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return H2Boundary::infinity();
    return H2Boundary::finite(real_at(j, "H2 boundary point"));
}

const Json& field(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string(what) + ": missing \"" + key + "\"");
    return j.at(key);
}

std::string string_at(const Json& j, const char* what) {
    if (!j.is_string()) throw ValidationError(std::string(what) + ": expected a string");
    return j.get<std::string>();
}

}  // namespace

Json to_json(const Point& p) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, E2Point> || std::is_same_v<T, H2Point>) {
                return pair_json(v.x, v.y);
            } else if constexpr (std::is_same_v<T, T4Point>) {
                return v.word;
            } else {
                return Json{{"base", pair_json(v.base.x, v.base.y)}, {"height", num(v.height)}};
            }
        },
        p);
}

Point point_from_json(ModelSpace model, const Json& j) {
    Point p;
    switch (model) {
        case ModelSpace::E2: {
            if (!j.is_array() || j.size() != 2) throw ValidationError("E2 point: expected [x, y]");
            p = E2Point{real_at(j[0], "E2 point"), real_at(j[1], "E2 point")};
            break;
        }
        case ModelSpace::H2: p = h2_point_from_json(j); break;
        case ModelSpace::T4: p = T4Point{string_at(j, "T4 point")}; break;
        case ModelSpace::H2xR:
            p = H2xRPoint{h2_point_from_json(field(j, "base", "H2xR point")),
                          real_at(field(j, "height", "H2xR point"), "H2xR point")};
            break;
    }
    validate(p);
    return p;
}

Json to_json(const BoundaryPoint& xi) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, E2Boundary>) {
                return num(v.angle);
            } else if constexpr (std::is_same_v<T, H2Boundary>) {
                return h2_boundary_json(v);
            } else if constexpr (std::is_same_v<T, T4Boundary>) {
                return Json{{"word", v.prefix}, {"periodic", v.period}};
            } else {
                return Json{{"xi", v.xi ? h2_boundary_json(*v.xi) : Json(nullptr)}, {"alpha", num(v.alpha)}};
            }
        },
        xi);
}

BoundaryPoint boundary_from_json(ModelSpace model, const Json& j) {
    BoundaryPoint b;
    switch (model) {
        case ModelSpace::E2: b = E2Boundary{real_at(j, "E2 boundary point")}; break;
        case ModelSpace::H2: b = h2_boundary_from_json(j); break;
        case ModelSpace::T4:
            b = T4Boundary{string_at(field(j, "word", "T4 boundary point"), "T4 boundary point"),
                           string_at(field(j, "periodic", "T4 boundary point"), "T4 boundary point")};
            break;
        case ModelSpace::H2xR: {
            const Json& xi = field(j, "xi", "H2xR boundary point");
            H2xRBoundary v;
            if (!xi.is_null()) v.xi = h2_boundary_from_json(xi);
            v.alpha = real_at(field(j, "alpha", "H2xR boundary point"), "H2xR boundary point");
            b = v;
            break;
        }
    }
    return normalize(b);
}

Json payload_json(const Isometry& g) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, E2Isometry>) {
                return Json{{"angle", num(v.angle)}, {"tx", num(v.tx)}, {"ty", num(v.ty)}};
            } else if constexpr (std::is_same_v<T, H2Isometry>) {
                return matrix_json(v);
            } else if constexpr (std::is_same_v<T, T4Isometry>) {
                return v.word;
            } else {
                return Json{{"base", matrix_json(v.base)}, {"shift", num(v.shift)}};
            }
        },
        g);
}

Json to_json(const Isometry& g) { return Json{{"model", std::string(to_string(model_of(g)))}, {"payload", payload_json(g)}}; }

Isometry isometry_from_json(const Json& j, std::optional<ModelSpace> model) {
    const Json* payload = &j;
    if (j.is_object() && j.contains("payload")) {
        const ModelSpace stated = parse_model(string_at(field(j, "model", "isometry"), "isometry model"));
        if (model && *model != stated) throw ValidationError("isometry: model differs from the enclosing spec");
        model = stated;
        payload = &j.at("payload");
    }
    if (!model) throw ValidationError("isometry: expected {\"model\", \"payload\"}");
    const Json& p = *payload;
    Isometry g;
    switch (*model) {
        case ModelSpace::E2:
            g = E2Isometry{real_at(field(p, "angle", "E2 isometry"), "E2 isometry"),
                           real_at(field(p, "tx", "E2 isometry"), "E2 isometry"),
                           real_at(field(p, "ty", "E2 isometry"), "E2 isometry")};
            break;
        case ModelSpace::H2: g = matrix_from_json(p); break;
        case ModelSpace::T4: g = T4Isometry{string_at(p, "T4 isometry")}; break;
        case ModelSpace::H2xR:
            g = H2xRIsometry{matrix_from_json(field(p, "base", "H2xR isometry")),
                             real_at(field(p, "shift", "H2xR isometry"), "H2xR isometry")};
            break;
    }
    return normalize(g);
}

Json to_json(const StepDistribution& spec) {
    Json atoms = Json::array();
    for (const auto& a : spec.atoms) atoms.push_back(Json{{"isometry", payload_json(a.g)}, {"p", num(a.p)}});
    return Json{{"model", std::string(to_string(spec.model))}, {"atoms", atoms}};
}

StepDistribution distribution_from_json(const Json& j) {
    StepDistribution spec;
    spec.model = parse_model(string_at(field(j, "model", "distribution"), "distribution model"));
    const Json& atoms = field(j, "atoms", "distribution");
    if (!atoms.is_array() || atoms.empty()) throw ValidationError("distribution: \"atoms\" must be a non-empty array");
    for (const auto& a : atoms) {
        spec.atoms.push_back({isometry_from_json(field(a, "isometry", "atom"), spec.model),
                              real_at(field(a, "p", "atom"), "atom probability")});
    }
    return validated(std::move(spec));
}

Json to_json(const AdmissibilityReport& r) {
    return Json{{"depth", r.depth},
                {"elements_reached", r.elements_reached},
                {"closure_capped", r.symmetric_closure_hit},
                {"certified", r.certified}};
}

Json to_json(const RankOneAudit& a) {
    Json atoms = Json::array();
    for (const auto& x : a.atoms) {
        atoms.push_back(Json{{"kind", std::string(to_string(x.kind.kind))},
                             {"translation_length", num(x.kind.translation_length)},
                             {"rank_one", x.rank_one}});
    }
    Json pairs = Json::array();
    for (const auto& p : a.pairs) {
        Json shell = Json::array(), box = Json::array();
        for (Real v : p.shell_scores) shell.push_back(num(v));
        for (Real v : p.box_scores) box.push_back(num(v));
        pairs.push_back(Json{{"atoms", Json::array({p.i, p.j})},
                             {"powers", kAuditPowers},
                             {"shell_scores", shell},
                             {"box_scores", box},
                             {"independent", p.independent}});
    }
    return Json{{"verdict", std::string(to_string(a.verdict))}, {"atoms", atoms}, {"pairs", pairs}};
}

Json to_json(const DriftReport& r) {
    Json j{{"n", r.n},
           {"m_samples", r.m_samples},
           {"lambda_hat", num(r.lambda_hat)},
           {"std_error", num(r.std_error)},
           {"horofunction_lambda", r.horofunction_lambda ? Json(num(*r.horofunction_lambda)) : Json(nullptr)},
           {"admissibility", to_json(r.admissibility)}};
    Json per = Json::array();
    for (Real v : r.per_sample_terminal) per.push_back(num(v));
    j["per_sample_terminal"] = per;
    return j;
}

Json to_json(const HittingHistogram& h) {
    Json bins = Json::array();
    for (std::size_t b = 0; b < h.masses.size(); ++b) {
        bins.push_back(Json{{"bin", bin_label(h.bins, b)}, {"mass", num(h.masses[b])}});
    }
    return Json{{"n", h.n}, {"m_samples", h.m_samples}, {"basepoint", to_json(h.basepoint)}, {"bins", bins}};
}

Json to_json(const ConvergenceProfile& p) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < p.checkpoints.size(); ++i) {
        rows.push_back(Json{{"step", p.checkpoints[i]},
                            {"direction", to_json(p.boundary_coords[i])},
                            {"cauchy_tail", num(p.cauchy_tail[i])}});
    }
    return rows;
}

Json to_json(const DiracReport& r) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.checkpoints.size(); ++i) {
        rows.push_back(Json{{"step", r.checkpoints[i]},
                            {"spread_a", num(r.spread_a[i])},
                            {"spread_b", num(r.spread_b[i])},
                            {"cross_spread", num(r.cross_spread[i])}});
    }
    return Json{{"hypotheses_ok", r.hypotheses_ok}, {"series", rows}};
}

Json to_json(const GapSeries& g) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < g.steps.size(); ++i) rows.push_back(Json{{"step", g.steps[i]}, {"gap", num(g.gap_series[i])}});
    return Json{{"sup_gap", num(g.sup_gap)}, {"series", rows}};
}

Json to_json(const PiConvergenceResult& r) {
    return Json{{"holds", r.holds},
                {"n0", r.n0},
                {"forward_limit", to_json(r.forward_limit)},
                {"backward_limit", to_json(r.backward_limit)}};
}

Json to_json(const TitsValue& t) { return t.infinite ? Json("inf") : Json(num(t.value)); }

void write_trace_csv(std::ostream& out, const WalkTrace& trace) {
    out << "step,increment_index,";
    switch (trace.spec.model) {
        case ModelSpace::E2:
        case ModelSpace::H2: out << "x,y"; break;
        case ModelSpace::T4: out << "word"; break;
        case ModelSpace::H2xR: out << "x,y,height"; break;
    }
    out << ",distance\n";
    const auto old = out.precision(17);
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const std::size_t k = trace.steps[i];
        out << k << ',';
        if (k > 0) out << trace.increments[k - 1];
        out << ',';
        const Point& p = trace.positions[i];
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, E2Point> || std::is_same_v<T, H2Point>) {
                    out << num(v.x) << ',' << num(v.y);
                } else if constexpr (std::is_same_v<T, T4Point>) {
                    out << v.word;
                } else {
                    out << num(v.base.x) << ',' << num(v.base.y) << ',' << num(v.height);
                }
            },
            p);
        out << ',' << num(distance(trace.basepoint, p)) << '\n';
    }
    out.precision(old);
}

}  // namespace cat0lab::io
