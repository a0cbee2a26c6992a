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

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "qws/channels.hpp"
#include "qws/policies.hpp"
#include "qws/wavelet.hpp"

namespace qws {

// --- Test signals and noise ---------------------------------------------------

/// Doppler test signal f(t) = √(t(1−t))·sin(2π·1.05/(t+0.05)) sampled at
/// t = (i+0.5)/N. Requires N ≥ 8.
Vec doppler(int n);

struct NoisySignalSpec {
    std::string signal_name = "doppler";
    int n = 1024;
    double snr = 7.0;
    uint64_t seed = 0;
};

struct NoisySignal {
    Vec clean;
    Vec noisy;
};

/// Generates the named signal and injects noise at the requested snr;
/// sd(clean)/sd(noisy − clean) equals snr exactly (the draw is scaled).
NoisySignal realize(const NoisySignalSpec& spec);

/// clean + σ·z with σ = sd(clean)/snr and z a seeded Gaussian vector scaled
/// to unit sample sd, so sd(noise) = σ exactly.
Vec add_noise(const Vec& clean, double snr, uint64_t seed);

/// Sample standard deviation (N−1 denominator).
double sample_sd(const Vec& x);

struct Metrics {
    double mse_estimate = 0.0;
    double mse_noisy = 0.0;
    double snr_gain_db = 0.0;
    bool infinite_gain = false;  // mse_estimate == 0
};

Metrics metrics(const Vec& clean, const Vec& estimate, const Vec& noisy);

// --- Shot sampling --------------------------------------------------------------

struct ShotResult {
    std::map<std::string, long> counts;
    long shots = 0;
    uint64_t seed = 0;
};

/// (n₀ − n₁)/shots after a Hadamard rotation and Z-basis sampling.
double measure_expectation_x(const StateVector& psi, long shots, uint64_t seed);
double measure_expectation_x(const DensityMatrix& rho, long shots, uint64_t seed);

/// Bernoulli counts over {"0","1"} with P(1) = p1.
ShotResult sample_bit(double p1, long shots, uint64_t seed);

// --- Quantum/classical denoising -------------------------------------------------

enum class ShrinkMode {
    ExpectationDamping,  // phase-damping channel on an ⟨X⟩-encoded qubit
    AncillaDilation,     // Stinespring route with retention s = (1+m)/2
    IdealMultiplier,     // m·x directly (noiseless reference)
};

ShrinkMode shrink_mode_from_string(const std::string& s);
std::string to_string(ShrinkMode mode);

/// Applies a γ-valued policy to every entry of a rescaled vector through the
/// chosen realization. `shots` empty = exact expectations.
Vec shrink_rescaled(const Vec& d, const ShrinkagePolicy& policy, ShrinkMode mode,
                    std::optional<long> shots, uint64_t seed);

struct DenoiseReport {
    double mse_noisy = 0.0;
    double mse_estimate = 0.0;
    double snr_gain_db = 0.0;
    Vec multipliers;       // per-coefficient channel multipliers (1 = untouched)
    Vec coeffs_before;     // rescaled coefficients entering shrinkage
    Vec coeffs_after;      // rescaled coefficients after shrinkage
    double rescale_factor = 1.0;
    std::string mode;
    double wall_time_s = 0.0;
};

struct DenoiseResult {
    Vec estimate;
    DenoiseReport report;
};

/// Forward transform → soft-threshold detail blocks (on the rescaled axis)
/// → inverse transform. The classical oracle baseline.
DenoiseResult denoise_classical(const Vec& noisy, const WaveletFilter& filter, int levels,
                                double lambda, const Vec* clean = nullptr);

/// Forward transform → rescale → per-coefficient CPTP shrinkage in the given
/// mode → de-rescale → inverse transform. Policy scope decides whether the
/// approximation block is touched.
DenoiseResult denoise_quantum(const Vec& noisy, const WaveletFilter& filter, int levels,
                              const ShrinkagePolicy& policy, ShrinkMode mode,
                              std::optional<long> shots, uint64_t seed,
                              const Vec* clean = nullptr);

// --- Ancilla experiments ----------------------------------------------------------

struct FlagExperimentResult {
    Vec flag_probability;  // P(flag = 1) per coefficient
    long shots = 0;
};

/// Threshold flag: the ancilla is flipped when |d_i| > λ, then sampled.
/// The control is classical, so probabilities are exactly 0 or 1.
FlagExperimentResult ancilla_flag_experiment(const Vec& d, double lambda, long shots,
                                             uint64_t seed);

struct SmoothAncillaResult {
    Vec excitation;  // p̂_i, estimated P(ancilla = 1)
    Vec shrunk;      // p̂_i · d_i
    long shots = 0;
};

/// Continuous attenuator: ancilla rotated by θ_i = π|d_i|, excitation
/// probability sin²(θ_i/2) estimated from shots.
SmoothAncillaResult smooth_ancilla_experiment(const Vec& d, long shots, uint64_t seed);

// --- Hardware surrogates ------------------------------------------------------------

struct HardwareModel {
    double t2_us = 100.0;  // dephasing time, µs
    long shot_budget = 1024;
    uint64_t seed = 0;
};

/// Idle time producing ⟨X⟩ retention s: t = −T₂ ln s.
double idle_time_for_retention(double s, const HardwareModel& model);

/// Dephasing strength accumulated while idling: γ = 1 − e^{−2t/T₂}.
double gamma_from_idle(double t, const HardwareModel& model);

/// Per shot: apply Z with probability γ, then measure X. Converges to
/// (1−2γ)·⟨X⟩.
double randomized_z_shrink(const StateVector& psi, double gamma, long shots, uint64_t seed);

}  // namespace qws
