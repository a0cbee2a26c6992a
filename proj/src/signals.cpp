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

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qws/pipeline.hpp"
#include "qws/rng.hpp"

namespace qws {

Vec doppler(int n) {
    if (n < 8) throw std::invalid_argument("doppler: need N >= 8, got " + std::to_string(n));
    Vec f(n);
    for (int i = 0; i < n; ++i) {
        const double t = (i + 0.5) / n;
        f[i] = std::sqrt(t * (1.0 - t)) *
               std::sin(2.0 * std::numbers::pi * 1.05 / (t + 0.05));
    }
    return f;
}

double sample_sd(const Vec& x) {
    if (x.size() < 2) throw std::invalid_argument("sample_sd: need at least 2 samples");
    const double mean = x.mean();
    return std::sqrt((x.array() - mean).square().sum() / static_cast<double>(x.size() - 1));
}

NoisySignal realize(const NoisySignalSpec& spec) {
    if (spec.signal_name != "doppler") {
        throw std::invalid_argument("unknown signal name: " + spec.signal_name);
    }
    NoisySignal out;
    out.clean = doppler(spec.n);
    out.noisy = add_noise(out.clean, spec.snr, spec.seed);
    return out;
}

Vec add_noise(const Vec& clean, double snr, uint64_t seed) {
    if (snr <= 0.0) throw std::invalid_argument("snr must be > 0");
    const double sigma = sample_sd(clean) / snr;
    auto rng = make_rng(seed, "noise");
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec z(clean.size());
    for (long i = 0; i < z.size(); ++i) z[i] = normal(rng);
    // Scale the draw to unit sample sd so sd(noise) equals sigma exactly.
    z /= sample_sd(z);
    return clean + sigma * z;
}

Metrics metrics(const Vec& clean, const Vec& estimate, const Vec& noisy) {
    if (clean.size() != estimate.size() || clean.size() != noisy.size()) {
        throw std::invalid_argument("metrics: length mismatch");
    }
    Metrics m;
    m.mse_estimate = (estimate - clean).squaredNorm() / static_cast<double>(clean.size());
    m.mse_noisy = (noisy - clean).squaredNorm() / static_cast<double>(clean.size());
    if (m.mse_estimate == 0.0) {
        m.infinite_gain = true;
        m.snr_gain_db = std::numeric_limits<double>::infinity();
    } else {
        m.snr_gain_db = 10.0 * std::log10(m.mse_noisy / m.mse_estimate);
    }
    return m;
}

}  // namespace qws
