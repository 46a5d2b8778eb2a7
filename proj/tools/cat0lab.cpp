// cat0lab: batch runner for the random-walk experiments.
//
//   cat0lab run <config.json> [--outdir DIR] [--allow-uncertified] [--threads N]
//   cat0lab sweep <glob> [same options]
//   cat0lab oracle tree-drift [--n N] [--rank R]
//   cat0lab oracle busemann-limit --model M --xi JSON --x JSON --z JSON [--t T]

#include <glob.h>

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cat0lab/boundary.hpp"
#include "cat0lab/experiment.hpp"
#include "cat0lab/oracles.hpp"

namespace {

using cat0lab::io::Json;

enum Exit { kOk = 0, kFailure = 1, kConfigError = 2, kRefused = 3, kDomain = 4 };

void diagnose(const std::string& status, const std::string& message, const std::string& file) {
    Json j{{"status", status}, {"message", message}};
    if (!file.empty()) j["config"] = file;
    std::cerr << j.dump() << '\n';
}

int run_one(const std::string& path, const std::string& outdir, const cat0lab::RunOptions& options) {
    Json config;
    try {
        std::ifstream in(path);
        if (!in) {
            diagnose("config error", "cannot open config file", path);
            return kConfigError;
        }
        config = Json::parse(in);
    } catch (const Json::exception& e) {
        diagnose("config error", std::string("malformed JSON: ") + e.what(), path);
        return kConfigError;
    }
    try {
        const auto out = cat0lab::run_experiment(config, options);
        const auto dir = cat0lab::write_outputs(out, outdir);
        std::cout << (dir / "report.json").string() << '\n';
        return kOk;
    } catch (const cat0lab::RefusalError& e) {
        diagnose("refused", e.what(), path);
        return kRefused;
    } catch (const cat0lab::ValidationError& e) {
        diagnose("config error", e.what(), path);
        return kConfigError;
    } catch (const cat0lab::UsageError& e) {
        diagnose("config error", e.what(), path);
        return kConfigError;
    } catch (const Json::exception& e) {
        diagnose("config error", e.what(), path);
        return kConfigError;
    } catch (const cat0lab::DomainError& e) {
        diagnose("domain error", e.what(), path);
        return kDomain;
    } catch (const std::exception& e) {
        diagnose("failure", e.what(), path);
        return kFailure;
    }
}

std::vector<std::string> expand(const std::string& pattern) {
    glob_t g{};
    std::vector<std::string> out;
    if (::glob(pattern.c_str(), 0, nullptr, &g) == 0) {
        for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
    }
    globfree(&g);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cat0lab: random walks on CAT(0) model spaces"};
    app.set_version_flag("--version", std::string(cat0lab::library_version()));
    app.require_subcommand(1);

    std::string config_path, pattern, outdir = "results";
    cat0lab::RunOptions options;

    auto add_run_options = [&](CLI::App* sub) {
        sub->add_option("--outdir", outdir, "output directory")->capture_default_str();
        sub->add_flag("--allow-uncertified", options.allow_uncertified, "run limit-law checks on uncertified specs");
        sub->add_option("--threads", options.threads, "worker threads (0 = all cores)")->capture_default_str();
    };

    auto* run = app.add_subcommand("run", "run one experiment config");
    run->add_option("config", config_path, "config JSON")->required();
    add_run_options(run);

    auto* sweep = app.add_subcommand("sweep", "run every config matching a glob");
    sweep->add_option("glob", pattern, "config glob")->required();
    add_run_options(sweep);

    auto* oracle = app.add_subcommand("oracle", "independent reference computations");
    oracle->require_subcommand(1);
    std::size_t n = 2000, rank = 2;
    auto* tree = oracle->add_subcommand("tree-drift", "exact E|Z_n|/n and limit speed on the free group");
    tree->add_option("--n", n)->capture_default_str();
    tree->add_option("--rank", rank)->capture_default_str();

    std::string model, xi_json, x_json, z_json;
    double t = 1e4;
    auto* busemann = oracle->add_subcommand("busemann-limit", "d(ray(t), z) - t against the closed form");
    busemann->add_option("--model", model)->required();
    busemann->add_option("--xi", xi_json)->required();
    busemann->add_option("--x", x_json)->required();
    busemann->add_option("--z", z_json)->required();
    busemann->add_option("--t", t)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (*run) return run_one(config_path, outdir, options);
    if (*sweep) {
        const auto files = expand(pattern);
        if (files.empty()) {
            diagnose("config error", "no config matches the glob", pattern);
            return kConfigError;
        }
        int worst = kOk;
        for (const auto& f : files) worst = std::max(worst, run_one(f, outdir, options));
        return worst;
    }
    try {
        if (*tree) {
            const Json j{{"n", n},
                         {"rank", rank},
                         {"mean_speed", static_cast<double>(cat0lab::oracle::tree_mean_speed(n, rank))},
                         {"limit_speed", static_cast<double>(cat0lab::oracle::tree_drift(rank))}};
            std::cout << j.dump(2) << '\n';
            return kOk;
        }
        if (*busemann) {
            const auto m = cat0lab::parse_model(model);
            const auto xi = cat0lab::io::boundary_from_json(m, Json::parse(xi_json));
            const auto x = cat0lab::io::point_from_json(m, Json::parse(x_json));
            const auto z = cat0lab::io::point_from_json(m, Json::parse(z_json));
            const Json j{{"t", t},
                         {"limit_oracle", static_cast<double>(cat0lab::oracle::busemann_limit(xi, x, z, t))},
                         {"closed_form", static_cast<double>(cat0lab::horofunction(xi, x, z))}};
            std::cout << j.dump(2) << '\n';
            return kOk;
        }
    } catch (const std::exception& e) {
        diagnose("config error", e.what(), "");
        return kConfigError;
    }
    return kFailure;
}
