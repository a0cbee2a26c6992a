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

#include "qws/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qws/rng.hpp"

namespace qws {

namespace {

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

long draw_binomial(long n, double p, std::mt19937_64& rng) {
    if (n == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    std::binomial_distribution<long> dist(n, p);
    return dist(rng);
}

// Counts for a ±1 observable with mean mu, estimate (n+ - n-)/shots.
double sample_pm1_mean(double mu, long shots, std::mt19937_64& rng) {
    const double p_plus = clamp01((1.0 + mu) / 2.0);
    const long n_plus = draw_binomial(shots, p_plus, rng);
    return (2.0 * n_plus - shots) / static_cast<double>(shots);
}

void check_shots(long shots) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1, got " + std::to_string(shots));
}

}  // namespace

ShotResult sample_bit(double p1, long shots, uint64_t seed) {
    check_shots(shots);
    auto rng = make_rng(seed);
    const long ones = draw_binomial(shots, clamp01(p1), rng);
    ShotResult result;
    result.counts["0"] = shots - ones;
    result.counts["1"] = ones;
    result.shots = shots;
    result.seed = seed;
    return result;
}

double measure_expectation_x(const StateVector& psi, long shots, uint64_t seed) {
    if (psi.qubits != 1) throw std::invalid_argument("measure_expectation_x: 1-qubit state expected");
    check_shots(shots);
    // Hadamard rotation, then Z-basis sampling: P(0) = |(a0+a1)/sqrt(2)|^2.
    const complex plus = (psi.amps[0] + psi.amps[1]) / std::sqrt(2.0);
    const double p0 = clamp01(std::norm(plus));
    auto rng = make_rng(seed);
    const long n0 = draw_binomial(shots, p0, rng);
    return (2.0 * n0 - shots) / static_cast<double>(shots);
}

double measure_expectation_x(const DensityMatrix& rho, long shots, uint64_t seed) {
    if (rho.qubits != 1) throw std::invalid_argument("measure_expectation_x: 1-qubit state expected");
    check_shots(shots);
    const double x = expect(rho, PauliString("X"));
    auto rng = make_rng(seed);
    return sample_pm1_mean(x, shots, rng);
}

ShrinkMode shrink_mode_from_string(const std::string& s) {
    if (s == "expectation_damping") return ShrinkMode::ExpectationDamping;
    if (s == "ancilla_dilation") return ShrinkMode::AncillaDilation;
    if (s == "ideal_multiplier") return ShrinkMode::IdealMultiplier;
    throw std::invalid_argument("unknown shrink mode: " + s);
}

std::string to_string(ShrinkMode mode) {
    switch (mode) {
        case ShrinkMode::ExpectationDamping: return "expectation_damping";
        case ShrinkMode::AncillaDilation: return "ancilla_dilation";
        case ShrinkMode::IdealMultiplier: return "ideal_multiplier";
    }
    return "?";
}

namespace {

// One coefficient through the chosen CPTP realization. Exact expectations
// unless shots are requested.
double shrink_one(double d, const ShrinkagePolicy& policy, ShrinkMode mode,
                  std::optional<long> shots, uint64_t seed, uint64_t index,
                  double* multiplier_out) {
    const double gamma = gamma_of(policy, d);
    const double m = std::sqrt(1.0 - gamma);
    if (multiplier_out) *multiplier_out = m;
    switch (mode) {
        case ShrinkMode::IdealMultiplier:
            return m * d;
        case ShrinkMode::ExpectationDamping: {
            const auto rho = to_density(expectation_encode(d));
            const auto damped = apply_channel(rho, phase_damping(gamma), {0});
            if (!shots) return expect(damped, PauliString("X"));
            return measure_expectation_x(damped, *shots,
                                         substream_seed(seed, "damping", index));
        }
        case ShrinkMode::AncillaDilation: {
            // Retention s = (1+m)/2 gives the retention channel the same
            // transverse multiplier m = 2s-1; realized through its dilation.
            const double s = retention_for_multiplier(m);
            const auto dil = ancilla_shrink_dilation(s);
            const auto rho = to_density(expectation_encode(d));
            const auto shrunk = dilate_apply_trace(rho, dil);
            if (!shots) return expect(shrunk, PauliString("X"));
            return measure_expectation_x(shrunk, *shots,
                                         substream_seed(seed, "dilation", index));
        }
    }
    throw std::invalid_argument("invalid shrink mode");
}

}  // namespace

Vec shrink_rescaled(const Vec& d, const ShrinkagePolicy& policy, ShrinkMode mode,
                    std::optional<long> shots, uint64_t seed) {
    if (!policy.gamma_valued()) {
        throw std::invalid_argument("quantum shrinkage needs a gamma-valued policy, got " +
                                    to_string(policy.kind));
    }
    if (shots) check_shots(*shots);
    Vec out(d.size());
    for (long i = 0; i < d.size(); ++i) {
        out[i] = shrink_one(d[i], policy, mode, shots, seed, static_cast<uint64_t>(i), nullptr);
    }
    return out;
}

DenoiseResult denoise_classical(const Vec& noisy, const WaveletFilter& filter, int levels,
                                double lambda, const Vec* clean) {
    const auto t0 = std::chrono::steady_clock::now();
    auto coeffs = mallat_forward(noisy, filter, levels);
    const auto rescaled = rescale_to_unit(coeffs.values);
    const auto soft = ShrinkagePolicy::classical_soft(lambda);

    DenoiseResult result;
    result.report.coeffs_before = rescaled.d;
    result.report.rescale_factor = rescaled.record.scale;
    result.report.mode = "classical_soft";
    result.report.multipliers = Vec::Ones(coeffs.values.size());

    Vec shrunk = rescaled.d;
    const int begin = coeffs.layout.details_begin();
    for (long i = begin; i < shrunk.size(); ++i) {
        shrunk[i] = classical_apply(soft, shrunk[i]);
        result.report.multipliers[i] = rescaled.d[i] == 0.0 ? 1.0 : shrunk[i] / rescaled.d[i];
    }
    result.report.coeffs_after = shrunk;

    coeffs.values = rescale_undo(shrunk, rescaled.record);
    result.estimate = mallat_inverse(coeffs, filter);
    if (clean) {
        const auto m = metrics(*clean, result.estimate, noisy);
        result.report.mse_estimate = m.mse_estimate;
        result.report.mse_noisy = m.mse_noisy;
        result.report.snr_gain_db = m.snr_gain_db;
    }
    result.report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

DenoiseResult denoise_quantum(const Vec& noisy, const WaveletFilter& filter, int levels,
                              const ShrinkagePolicy& policy, ShrinkMode mode,
                              std::optional<long> shots, uint64_t seed, const Vec* clean) {
    if (!policy.gamma_valued()) {
        throw std::invalid_argument("denoise_quantum needs a gamma-valued policy, got " +
                                    to_string(policy.kind));
    }
    if (shots) check_shots(*shots);
    const auto t0 = std::chrono::steady_clock::now();
    auto coeffs = mallat_forward(noisy, filter, levels);
    const auto rescaled = rescale_to_unit(coeffs.values);

    DenoiseResult result;
    result.report.coeffs_before = rescaled.d;
    result.report.rescale_factor = rescaled.record.scale;
    result.report.mode = to_string(mode);
    result.report.multipliers = Vec::Ones(coeffs.values.size());

    const long begin =
        policy.scope == PolicyScope::All ? 0 : coeffs.layout.details_begin();
    Vec shrunk = rescaled.d;
    for (long i = begin; i < shrunk.size(); ++i) {
        double multiplier = 1.0;
        shrunk[i] = shrink_one(rescaled.d[i], policy, mode, shots, seed,
                               static_cast<uint64_t>(i), &multiplier);
        result.report.multipliers[i] = multiplier;
    }
    result.report.coeffs_after = shrunk;

    coeffs.values = rescale_undo(shrunk, rescaled.record);
    result.estimate = mallat_inverse(coeffs, filter);
    if (clean) {
        const auto m = metrics(*clean, result.estimate, noisy);
        result.report.mse_estimate = m.mse_estimate;
        result.report.mse_noisy = m.mse_noisy;
        result.report.snr_gain_db = m.snr_gain_db;
    }
    result.report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

FlagExperimentResult ancilla_flag_experiment(const Vec& d, double lambda, long shots,
                                             uint64_t seed) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("lambda must be in (0,1), got " + std::to_string(lambda));
    }
    check_shots(shots);
    FlagExperimentResult result;
    result.shots = shots;
    result.flag_probability = Vec(d.size());
    for (long i = 0; i < d.size(); ++i) {
        if (std::abs(d[i]) > 1.0) {
            throw std::invalid_argument("flag experiment input must be rescaled to [-1,1]");
        }
        // Data qubit encodes d_i; the ancilla (qubit 1) is flipped under a
        // classical control |d_i| > lambda, so its excitation is 0 or 1
        // exactly and sampling cannot blur it.
        auto psi = expectation_encode(d[i]);
        psi.qubits = 2;
        CVec joint = CVec::Zero(4);
        joint[0] = psi.amps[0];
        joint[1] = psi.amps[1];
        psi.amps = joint;
        if (std::abs(d[i]) > lambda) {
            CMat x(2, 2);
            x << 0.0, 1.0, 1.0, 0.0;
            psi = apply_unitary(psi, x, {1});
        }
        double p1 = 0.0;
        for (long b = 0; b < 4; ++b) {
            if (b & 2) p1 += std::norm(psi.amps[b]);
        }
        const auto counts = sample_bit(p1, shots, substream_seed(seed, "flag", i));
        result.flag_probability[i] =
            static_cast<double>(counts.counts.at("1")) / static_cast<double>(shots);
    }
    return result;
}

SmoothAncillaResult smooth_ancilla_experiment(const Vec& d, long shots, uint64_t seed) {
    check_shots(shots);
    SmoothAncillaResult result;
    result.shots = shots;
    result.excitation = Vec(d.size());
    result.shrunk = Vec(d.size());
    for (long i = 0; i < d.size(); ++i) {
        if (std::abs(d[i]) > 1.0) {
            throw std::invalid_argument("smooth ancilla input must be rescaled to [-1,1]");
        }
        // Ancilla rotated by θ = π|d_i| from |0>: P(1) = sin²(θ/2).
        const double theta = std::numbers::pi * std::abs(d[i]);
        const double c = std::cos(theta / 2.0);
        const double s = std::sin(theta / 2.0);
        CMat ry(2, 2);
        ry << c, -s, s, c;
        StateVector anc;
        anc.qubits = 1;
        anc.amps = CVec::Zero(2);
        anc.amps[0] = 1.0;
        anc = apply_unitary(anc, ry, {0});
        const double p1 = std::norm(anc.amps[1]);
        const auto counts = sample_bit(p1, shots, substream_seed(seed, "smooth", i));
        result.excitation[i] =
            static_cast<double>(counts.counts.at("1")) / static_cast<double>(shots);
        result.shrunk[i] = result.excitation[i] * d[i];
    }
    return result;
}

double idle_time_for_retention(double s, const HardwareModel& model) {
    if (model.t2_us <= 0.0) throw std::invalid_argument("T2 must be > 0");
    if (!(s > 0.0 && s <= 1.0)) {
        throw std::invalid_argument("retention s must be in (0,1], got " + std::to_string(s));
    }
    return -model.t2_us * std::log(s);
}

double gamma_from_idle(double t, const HardwareModel& model) {
    if (model.t2_us <= 0.0) throw std::invalid_argument("T2 must be > 0");
    if (t < 0.0) throw std::invalid_argument("idle time must be >= 0");
    return 1.0 - std::exp(-2.0 * t / model.t2_us);
}

double randomized_z_shrink(const StateVector& psi, double gamma, long shots, uint64_t seed) {
    if (psi.qubits != 1) throw std::invalid_argument("randomized_z_shrink: 1-qubit state expected");
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("gamma must be in [0,1], got " + std::to_string(gamma));
    }
    check_shots(shots);
    const double x = expect(psi, PauliString("X"));
    auto rng = make_rng(seed);
    // Z flips <X> to -<X>; each shot picks Z with probability gamma, then
    // measures X on the flipped or unflipped state.
    const long flipped = draw_binomial(shots, gamma, rng);
    const long n_plus = draw_binomial(flipped, clamp01((1.0 - x) / 2.0), rng) +
                        draw_binomial(shots - flipped, clamp01((1.0 + x) / 2.0), rng);
    return (2.0 * n_plus - shots) / static_cast<double>(shots);
}

}  // namespace qws
