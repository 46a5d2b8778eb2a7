#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cat0lab/io.hpp"

namespace cat0lab {

inline constexpr const char* kConfigSchema = "cat0lab.config/1";
inline constexpr const char* kReportSchema = "cat0lab.report/1";

std::string_view library_version();

const std::vector<std::string>& experiment_names();

/// Experiments that estimate a limit law and therefore refuse uncertified specs.
bool is_limit_law_check(std::string_view experiment);

struct RunOptions {
    bool allow_uncertified = false;
    unsigned threads = 1;
};

struct ExperimentOutput {
    std::string experiment;
    std::uint64_t seed = 0;
    io::Json report;         // everything except "timing" is a pure function of the config
    std::string series_csv;  // empty when the experiment has no series
};

/// Throws ValidationError / UsageError for bad configs, RefusalError when the
/// admissibility check fails without the override.
ExperimentOutput run_experiment(const io::Json& config, const RunOptions& options = {});

/// <outdir>/<experiment>-<seed>/report.json and series.csv; returns the directory.
std::filesystem::path write_outputs(const ExperimentOutput& out, const std::filesystem::path& outdir);

/// Report with the "timing" member removed, serialized.
std::string report_without_timing(const io::Json& report);

}  // namespace cat0lab
