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

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qws/pipeline.hpp"

namespace qws {

/// Raised for unreadable/invalid configs (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a numerical invariant fails at run time (CLI exit code 1).
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One experiment = one named recipe plus its knobs. Every artifact a recipe
/// writes is a pure function of this struct.
struct ExperimentConfig {
    std::string figure;  // fig1_dwt, fig5_hard, fig6_smooth, fig3_doppler, fig4_diag,
                         // fig7_power, fig8_flag, fig9_smooth_ancilla,
                         // fig10_phase_encode, hw_idle, hw_randz
    std::string signal = "doppler";
    std::string signal_path;  // CSV input when signal == "custom"
    int n = 1024;
    double snr = 7.0;
    uint64_t seed = 1;
    WaveletFilter filter;
    int levels = 2;
    ShrinkagePolicy policy;
    ShrinkMode mode = ShrinkMode::ExpectationDamping;
    std::optional<long> shots;
    std::optional<HardwareModel> hardware;
    std::string output_dir = "out";

    /// Strict parse: unknown keys rejected, missing required keys named.
    static ExperimentConfig from_json(const nlohmann::json& doc);
    static ExperimentConfig from_file(const std::string& path);
    nlohmann::json to_json() const;
};

const std::vector<std::string>& known_figures();

/// Demo coefficient vector used by the small-register recipes.
const Vec& demo_coefficients();

struct RunArtifacts {
    std::vector<std::string> files;  // paths written
    std::string report_path;
};

/// Executes the configured recipe, writing CSV artifacts and a report JSON
/// (config hash + seed included) into output_dir/<figure>/. All writes are
/// atomic.
RunArtifacts run_experiment(const ExperimentConfig& config);

// --- Invariant suite ("verify") ----------------------------------------------

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    std::string detail;
};

/// Orthogonality, oracle equivalence, CPTP certificates, dilation
/// equivalence and Bloch laws over a small fixed grid. With inject_fault,
/// one Kraus operator is corrupted so the completeness certificate must
/// report a failure.
std::vector<CheckResult> verify_suite(bool inject_fault = false);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace qws
