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

#include "qws/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qws {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_unit_interval_input(double x) {
    if (std::abs(x) > 1.0) {
        throw std::invalid_argument("policy input must be in [-1,1], got " + std::to_string(x));
    }
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

bool ShrinkagePolicy::gamma_valued() const {
    switch (kind) {
        case PolicyKind::HardGamma:
        case PolicyKind::ExpGamma:
        case PolicyKind::CosGamma:
        case PolicyKind::Cos4Gamma:
            return true;
        default:
            return false;
    }
}

ShrinkagePolicy ShrinkagePolicy::hard(double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    ShrinkagePolicy p;
    p.kind = PolicyKind::HardGamma;
    p.lambda = lambda;
    return p;
}

ShrinkagePolicy ShrinkagePolicy::exp_rule(double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
    ShrinkagePolicy p;
    p.kind = PolicyKind::ExpGamma;
    p.alpha = alpha;
    return p;
}

ShrinkagePolicy ShrinkagePolicy::cos_rule(double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be > 0");
    ShrinkagePolicy p;
    p.kind = PolicyKind::CosGamma;
    p.alpha = alpha;
    return p;
}

ShrinkagePolicy ShrinkagePolicy::cos4() {
    ShrinkagePolicy p;
    p.kind = PolicyKind::Cos4Gamma;
    return p;
}

ShrinkagePolicy ShrinkagePolicy::power_law(double exponent) {
    if (exponent <= 0.0) throw std::invalid_argument("exponent must be > 0");
    ShrinkagePolicy p;
    p.kind = PolicyKind::PowerLaw;
    p.exponent = exponent;
    return p;
}

ShrinkagePolicy ShrinkagePolicy::classical_soft(double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    ShrinkagePolicy p;
    p.kind = PolicyKind::ClassicalSoft;
    p.lambda = lambda;
    return p;
}

ShrinkagePolicy ShrinkagePolicy::classical_hard(double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    ShrinkagePolicy p;
    p.kind = PolicyKind::ClassicalHard;
    p.lambda = lambda;
    return p;
}

std::string to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::HardGamma: return "hard_gamma";
        case PolicyKind::ExpGamma: return "exp_gamma";
        case PolicyKind::CosGamma: return "cos_gamma";
        case PolicyKind::Cos4Gamma: return "cos4_gamma";
        case PolicyKind::PowerLaw: return "power_law";
        case PolicyKind::ClassicalSoft: return "classical_soft";
        case PolicyKind::ClassicalHard: return "classical_hard";
    }
    return "?";
}

namespace {

PolicyKind kind_from_string(const std::string& s) {
    if (s == "hard_gamma") return PolicyKind::HardGamma;
    if (s == "exp_gamma") return PolicyKind::ExpGamma;
    if (s == "cos_gamma") return PolicyKind::CosGamma;
    if (s == "cos4_gamma") return PolicyKind::Cos4Gamma;
    if (s == "power_law") return PolicyKind::PowerLaw;
    if (s == "classical_soft") return PolicyKind::ClassicalSoft;
    if (s == "classical_hard") return PolicyKind::ClassicalHard;
    throw std::invalid_argument("unknown policy kind: " + s);
}

}  // namespace

ShrinkagePolicy ShrinkagePolicy::from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("policy: expected an object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "kind" && key != "lambda" && key != "alpha" && key != "exponent" &&
            key != "scope") {
            throw std::invalid_argument("policy: unknown key '" + key + "'");
        }
    }
    if (!doc.contains("kind")) throw std::invalid_argument("policy: missing key 'kind'");
    ShrinkagePolicy p;
    p.kind = kind_from_string(doc.at("kind").get<std::string>());
    if (doc.contains("lambda")) p.lambda = doc.at("lambda").get<double>();
    if (doc.contains("alpha")) p.alpha = doc.at("alpha").get<double>();
    if (doc.contains("exponent")) p.exponent = doc.at("exponent").get<double>();
    if (doc.contains("scope")) {
        const std::string s = doc.at("scope").get<std::string>();
        if (s == "details") p.scope = PolicyScope::DetailsOnly;
        else if (s == "all") p.scope = PolicyScope::All;
        else throw std::invalid_argument("policy: scope must be 'details' or 'all', got '" + s + "'");
    }
    if (p.lambda < 0.0) throw std::invalid_argument("policy: lambda must be >= 0");
    if (p.alpha < 0.0) throw std::invalid_argument("policy: alpha must be >= 0");
    if (p.kind == PolicyKind::PowerLaw && p.exponent <= 0.0) {
        throw std::invalid_argument("policy: exponent must be > 0");
    }
    return p;
}

nlohmann::json ShrinkagePolicy::to_json() const {
    nlohmann::json doc{{"kind", to_string(kind)}};
    doc["lambda"] = lambda;
    doc["alpha"] = alpha;
    doc["exponent"] = exponent;
    doc["scope"] = scope == PolicyScope::DetailsOnly ? "details" : "all";
    return doc;
}

double gamma_of(const ShrinkagePolicy& policy, double x) {
    check_unit_interval_input(x);
    const double ax = std::abs(x);
    switch (policy.kind) {
        case PolicyKind::HardGamma:
            return ax <= policy.lambda ? 1.0 : 0.0;
        case PolicyKind::ExpGamma:
            return clamp01(1.0 - std::exp(-policy.alpha * ax));
        case PolicyKind::CosGamma:
            return clamp01(std::cos(kHalfPi * std::pow(ax, policy.alpha)));
        case PolicyKind::Cos4Gamma: {
            const double c = std::cos(kHalfPi * ax);
            return clamp01(c * c * c * c);
        }
        default:
            throw std::invalid_argument("gamma_of: policy '" + to_string(policy.kind) +
                                        "' is value-valued, not gamma-valued");
    }
}

double multiplier_of(const ShrinkagePolicy& policy, double x) {
    return std::sqrt(1.0 - gamma_of(policy, x));
}

double classical_apply(const ShrinkagePolicy& policy, double x) {
    switch (policy.kind) {
        case PolicyKind::ClassicalSoft: {
            const double mag = std::max(std::abs(x) - policy.lambda, 0.0);
            return x < 0.0 ? -mag : mag;
        }
        case PolicyKind::ClassicalHard:
            return std::abs(x) > policy.lambda ? x : 0.0;
        case PolicyKind::PowerLaw: {
            check_unit_interval_input(x);
            const double mag = std::pow(std::abs(x), policy.exponent);
            return x < 0.0 ? -mag : mag;
        }
        default:
            throw std::invalid_argument("classical_apply: policy '" + to_string(policy.kind) +
                                        "' is gamma-valued, not value-valued");
    }
}

double smooth_ancilla_probability(double x) {
    check_unit_interval_input(x);
    const double half_theta = kHalfPi * std::abs(x);  // θ = π|x|
    const double s = std::sin(half_theta);
    return clamp01(s * s);
}

}  // namespace qws
