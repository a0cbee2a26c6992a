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

#include <string>

#include <nlohmann/json_fwd.hpp>

namespace qws {

// Shrinkage rules on the rescaled axis [−1,1]. γ-valued kinds produce a
// damping parameter γ(x) ∈ [0,1] whose channel multiplier is √(1−γ);
// value-valued kinds map a coefficient directly to its shrunk value.

enum class PolicyKind {
    HardGamma,     // γ = 1(|x| ≤ λ)
    ExpGamma,      // γ = 1 − exp(−α|x|)
    CosGamma,      // γ = cos(π/2 · |x|^α)
    Cos4Gamma,     // γ = cos⁴(π/2 · |x|)
    PowerLaw,      // x ↦ sign(x)|x|^p
    ClassicalSoft, // x ↦ sign(x)·max(|x|−λ, 0)
    ClassicalHard, // x ↦ x·1(|x| > λ)
};

enum class PolicyScope {
    DetailsOnly,  // approximation block passes through unshrunk (default)
    All,
};

struct ShrinkagePolicy {
    PolicyKind kind = PolicyKind::Cos4Gamma;
    double lambda = 0.0;
    double alpha = 1.0;
    double exponent = 1.0;
    PolicyScope scope = PolicyScope::DetailsOnly;

    bool gamma_valued() const;

    static ShrinkagePolicy hard(double lambda);
    static ShrinkagePolicy exp_rule(double alpha);  // alpha ≥ 0 (0 = identity)
    static ShrinkagePolicy cos_rule(double alpha);
    static ShrinkagePolicy cos4();
    static ShrinkagePolicy power_law(double exponent);
    static ShrinkagePolicy classical_soft(double lambda);
    static ShrinkagePolicy classical_hard(double lambda);

    /// {kind, lambda?, alpha?, exponent?, scope?}; unknown keys rejected.
    static ShrinkagePolicy from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;
};

std::string to_string(PolicyKind kind);

/// Damping parameter for a γ-valued policy at x ∈ [−1,1].
double gamma_of(const ShrinkagePolicy& policy, double x);

/// √(1−γ(x)); the ideal shrunk value is multiplier_of(p,x)·x.
double multiplier_of(const ShrinkagePolicy& policy, double x);

/// Value-valued rules (classical soft/hard, power law).
double classical_apply(const ShrinkagePolicy& policy, double x);

/// Excitation probability of the smooth ancilla attenuator:
/// p = sin²(θ/2) with θ = π|x|; the shrunk coefficient is p·x.
double smooth_ancilla_probability(double x);

}  // namespace qws
