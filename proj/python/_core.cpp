// pybind11 bridge. Values cross as JSON text; cat0lab/__init__.py wraps these
// entry points with dict-based signatures.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cat0lab/experiment.hpp"
#include "cat0lab/geometry.hpp"
#include "cat0lab/oracles.hpp"

namespace py = pybind11;
using namespace cat0lab;
using io::Json;

namespace {

Json parse(const std::string& text) { return Json::parse(text); }

std::string distance_json(const std::string& model, const std::string& p, const std::string& q) {
    const ModelSpace m = parse_model(model);
    return Json(static_cast<double>(cat0lab::distance(io::point_from_json(m, parse(p)), io::point_from_json(m, parse(q))))).dump();
}

double horofunction_value(const std::string& model, const std::string& xi, const std::string& x, const std::string& z) {
    const ModelSpace m = parse_model(model);
    return static_cast<double>(horofunction(io::boundary_from_json(m, parse(xi)), io::point_from_json(m, parse(x)),
                                            io::point_from_json(m, parse(z))));
}

std::string tits_json(const std::string& model, const std::string& xi, const std::string& eta) {
    const ModelSpace m = parse_model(model);
    return io::to_json(tits_distance(io::boundary_from_json(m, parse(xi)), io::boundary_from_json(m, parse(eta)))).dump();
}

std::string drift_json(const std::string& spec_text, const std::string& basepoint, std::size_t n, std::size_t m,
                       std::uint64_t seed, bool allow_uncertified, unsigned threads) {
    const StepDistribution spec = io::distribution_from_json(parse(spec_text));
    const Point x = basepoint.empty() ? default_basepoint(spec.model) : io::point_from_json(spec.model, parse(basepoint));
    DriftOptions o;
    o.allow_uncertified = allow_uncertified;
    o.threads = threads;
    py::gil_scoped_release release;
    return io::to_json(drift_estimate(spec, x, n, m, seed, o)).dump();
}

std::string audit_json(const std::string& spec_text) {
    return io::to_json(rankone_audit(io::distribution_from_json(parse(spec_text)))).dump();
}

std::string run_json(const std::string& config, bool allow_uncertified, unsigned threads) {
    const Json c = parse(config);
    py::gil_scoped_release release;
    return run_experiment(c, {allow_uncertified, threads}).report.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "cat0lab native core";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
    py::register_exception<RefusalError>(m, "RefusalError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Json::exception& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("library_version", [] { return std::string(library_version()); });
    m.def("experiment_names", [] { return experiment_names(); });
    m.def("distance", &distance_json);
    m.def("horofunction", &horofunction_value);
    m.def("tits_distance", &tits_json);
    m.def("drift_estimate", &drift_json);
    m.def("rankone_audit", &audit_json);
    m.def("run_experiment", &run_json);
    m.def("report_without_timing", [](const std::string& r) { return report_without_timing(parse(r)); });
    m.def("tree_drift", [](std::size_t rank) { return static_cast<double>(oracle::tree_drift(rank)); });
    m.def("tree_mean_speed", [](std::size_t n, std::size_t rank) {
        return static_cast<double>(oracle::tree_mean_speed(n, rank));
    });
}
