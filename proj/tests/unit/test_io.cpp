#include <sstream>

#include "doctest.h"
#include "support.hpp"

#include "cat0lab/experiment.hpp"
#include "cat0lab/oracles.hpp"

using namespace cat0lab;
using io::Json;

TEST_CASE("JSON round trips") {
    sampling::Engine rng(21);
    for (ModelSpace m : testing::kModels) {
        CAPTURE(to_string(m));
        for (int i = 0; i < 30; ++i) {
            const Point p = sampling::random_point(m, rng);
            CHECK(approx_equal(io::point_from_json(m, Json::parse(io::to_json(p).dump())), p, 1e-12));
            const BoundaryPoint xi = sampling::random_boundary(m, rng);
            CHECK(approx_equal(io::boundary_from_json(m, Json::parse(io::to_json(xi).dump())), xi, 1e-12));
            const Isometry g = sampling::random_isometry(m, rng);
            CHECK(approx_equal(io::isometry_from_json(Json::parse(io::to_json(g).dump())), g, 1e-9));
            CHECK(approx_equal(io::isometry_from_json(io::payload_json(g), m), g, 1e-9));
        }
    }
    const auto spec = testing::standard_h2_spec();
    const auto back = io::distribution_from_json(io::to_json(spec));
    REQUIRE(back.atoms.size() == 4);
    CHECK(back.model == ModelSpace::H2);
    CHECK(approx_equal(back.atoms[3].g, spec.atoms[3].g));
}

TEST_CASE("malformed payloads are rejected") {
    CHECK_THROWS_AS(io::point_from_json(ModelSpace::T4, Json("aA")), ValidationError);
    CHECK_THROWS_AS(io::point_from_json(ModelSpace::H2, Json::array({0, -1})), ValidationError);
    CHECK_THROWS_AS(io::isometry_from_json(Json{{"model", "H2"}, {"payload", {{1, 1}, {1, 1}}}}), ValidationError);
    CHECK_THROWS(io::distribution_from_json(Json::parse(R"({"model":"T4","atoms":[{"isometry":"a","p":0.7}]})")));
}

TEST_CASE("trace CSV") {
    const WalkTrace t = sample_walk(testing::uniform_tree_spec(), T4Point{}, 10, 1, 0, 5);
    std::ostringstream out;
    io::write_trace_csv(out, t);
    const std::string s = out.str();
    CHECK(std::count(s.begin(), s.end(), '\n') == 4);  // header and steps 0, 5, 10
}

TEST_CASE("experiments are deterministic and thread independent") {
    Json config = Json::parse(R"({"schema": "cat0lab.config/1", "experiment": "drift", "n": 200, "m_samples": 32, "seed": 4})");
    config["distribution"] = io::to_json(testing::uniform_tree_spec());
    const auto a = run_experiment(config, {false, 1});
    const auto b = run_experiment(config, {false, 4});
    CHECK(report_without_timing(a.report) == report_without_timing(b.report));
    CHECK(a.report["schema"] == kReportSchema);
    CHECK(a.report.contains("timing"));
    CHECK(a.report["hypotheses"]["admissibility"]["certified"] == true);
}

TEST_CASE("every experiment runs on a small config") {
    for (const auto& name : experiment_names()) {
        CAPTURE(name);
        Json c{{"experiment", name}, {"n", 60}, {"m_samples", 8}, {"seed", 1}, {"checkpoints", 4}};
        c["distribution"] = io::to_json(testing::standard_h2_spec());
        if (name == "track") c["params"] = {{"lambda", 0.5}};
        if (name == "northsouth" || name == "pi-convergence") {
            c["params"] = {{"isometry", {{"model", "H2"}, {"payload", {{2, 0}, {0, 0.5}}}}}, {"samples", 20}};
        }
        if (name == "tits-table") c["params"] = {{"grid", 3}};
        CHECK_NOTHROW(run_experiment(c));
    }
}

TEST_CASE("config errors") {
    CHECK_THROWS(run_experiment(Json{{"experiment", "nope"}, {"model", "H2"}}));
    CHECK_THROWS(run_experiment(Json{{"experiment", "drift"}}));
    CHECK_THROWS_AS(run_experiment(Json::parse(R"({"experiment":"drift","distribution":
        {"model":"T4","atoms":[{"isometry":"a","p":0.5},{"isometry":"b","p":0.5}]}})")),
                    RefusalError);
    CHECK_NOTHROW(run_experiment(Json::parse(R"({"experiment":"drift","n":10,"m_samples":2,"distribution":
        {"model":"T4","atoms":[{"isometry":"a","p":0.5},{"isometry":"b","p":0.5}]}})"),
                                 {true, 1}));
}

TEST_CASE("library oracles") {
    const auto law = oracle::tree_distance_law(50);
    Real total = 0;
    for (Real p : law) total += p;
    CHECK(total == doctest::Approx(1));
    CHECK(oracle::tree_drift(2) == doctest::Approx(0.5));
    CHECK(oracle::tree_drift(3) == doctest::Approx(2.0 / 3));
    CHECK(oracle::tree_mean_speed(1) == doctest::Approx(1));
}
