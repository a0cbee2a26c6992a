// Copyright 2026 The qws Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qws/experiments.hpp"
#include "qws/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;

int cmd_run(const std::string& config_path, const std::optional<std::string>& output_dir,
            const std::optional<uint64_t>& seed, const std::optional<long>& shots) {
    qws::ExperimentConfig config;
    try {
        config = qws::ExperimentConfig::from_file(config_path);
        if (output_dir) config.output_dir = *output_dir;
        if (seed) config.seed = *seed;
        if (shots) {
            if (*shots < 1) throw qws::ConfigError("--shots must be >= 1");
            config.shots = *shots;
        }
    } catch (const qws::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    }

    try {
        const auto artifacts = qws::run_experiment(config);
        for (const auto& f : artifacts.files) std::printf("wrote %s\n", f.c_str());
        return kExitOk;
    } catch (const qws::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "invariant violation: %s\n", e.what());
        return kExitInvariant;
    }
}

int cmd_verify(bool inject_fault) {
    const auto results = qws::verify_suite(inject_fault);
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    for (const auto& r : results) {
        std::printf("%-6s %-*s residual=%s%s%s\n", r.passed ? "[PASS]" : "[FAIL]",
                    static_cast<int>(width), r.name.c_str(),
                    qws::format_g17(r.residual).c_str(), r.detail.empty() ? "" : "  ",
                    r.detail.c_str());
    }
    if (!qws::all_passed(results)) {
        for (const auto& r : results) {
            if (!r.passed) {
                std::fprintf(stderr, "invariant violated: %s\n", r.name.c_str());
                break;
            }
        }
        return kExitInvariant;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum wavelet shrinkage laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> output_dir;
    std::optional<uint64_t> seed;
    std::optional<long> shots;
    auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
    run->add_option("config", config_path, "path to the config JSON")->required();
    run->add_option("--output-dir", output_dir, "override the config's output directory");
    run->add_option("--seed", seed, "override the config's seed");
    run->add_option("--shots", shots, "override the config's shot budget");

    bool inject_fault = false;
    auto* verify = app.add_subcommand("verify", "run the numerical invariant suite");
    verify->add_flag("--inject-fault", inject_fault,
                     "corrupt one Kraus operator to exercise the failure path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    if (run->parsed()) return cmd_run(config_path, output_dir, seed, shots);
    return cmd_verify(inject_fault);
}
