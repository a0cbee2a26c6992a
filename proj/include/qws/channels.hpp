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

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qws/state.hpp"

namespace qws {

/// CPTP map as an ordered Kraus set {K_m} with Σ K_m†K_m = I (within 1e-12,
/// enforced at construction).
struct KrausChannel {
    std::vector<CMat> ops;
    int qubits = 0;

    static KrausChannel from_ops(std::vector<CMat> ops);
    double completeness_residual() const;

    nlohmann::json to_json() const;
    static KrausChannel from_json(const nlohmann::json& doc);
};

// --- Single-qubit shrinkage channels -----------------------------------------

/// K₀ = diag(1, √(1−γ)), K₁ = diag(0, √γ). Bloch action
/// (x,y,z) ↦ (√(1−γ)x, √(1−γ)y, z).
KrausChannel phase_damping(double gamma);

/// {√(1−γ)·I, √γ·Z}: ρ ↦ (1−γ)ρ + γZρZ. ⟨X⟩ multiplier is (1−2γ).
KrausChannel phase_flip(double gamma);

/// {√s·I, √(1−s)·Z}: ρ ↦ sρ + (1−s)ZρZ. ⟨X⟩,⟨Y⟩ multiplied by (2s−1),
/// ⟨Z⟩ preserved.
KrausChannel ancilla_shrink_channel(double s);

/// Decay to |0⟩: K₀ = diag(1, √(1−γ)), K₁ = [[0, √γ],[0, 0]].
KrausChannel amplitude_damping(double gamma);

/// Retention giving ⟨X⟩ multiplier m ∈ [0,1] through the ancilla channel:
/// s = (1+m)/2, so that (2s−1) = m.
double retention_for_multiplier(double m);

// --- Ancilla dilation ---------------------------------------------------------

/// Per-basis-state retentions s_j ∈ [0,1] and the control angles
/// θ_j = arccos √s_j they induce (s_j = cos²θ_j).
struct RetentionVector {
    Vec s;
    Vec theta;

    static RetentionVector from_retentions(const Vec& s);
    static RetentionVector from_multipliers(const Vec& m);
    long size() const { return s.size(); }
};

/// Joint unitary on system ⊗ ancilla with the ancilla as the top qubit(s),
/// always acting on the ancilla initialized to |0…0⟩.
struct DilationUnitary {
    CMat u;
    int system_qubits = 0;
    int ancilla_qubits = 1;

    long system_dim() const { return 1L << system_qubits; }
    long ancilla_dim() const { return 1L << ancilla_qubits; }
};

/// exp[−i Σ_j θ_j |j⟩⟨j| ⊗ X_anc]: conditioned on system state |j⟩ the
/// ancilla is rotated by exp(−iθ_j X) = [[cosθ_j, −i sinθ_j],[−i sinθ_j, cosθ_j]],
/// so the ancilla stays |0⟩ with probability s_j = cos²θ_j. The traced
/// channel fixes populations and multiplies each coherence ρ_jk by
/// cos(θ_j − θ_k).
DilationUnitary ancilla_dilation(const RetentionVector& retention, int system_qubits);

/// Single-qubit Stinespring realization of the retention channel: with
/// θ = arccos √s, U = exp(−iθ Z ⊗ X_anc) traces down to exactly
/// s·ρ + (1−s)·ZρZ. (The |j⟩⟨j|-controlled form above cannot produce this
/// with equal angles on both branches; the Z generator signs them ±θ.)
DilationUnitary ancilla_shrink_dilation(double s);

/// Kraus extraction K_e = ⟨e|U|0⟩ over the ancilla basis.
KrausChannel kraus_from_dilation(const DilationUnitary& dilation);

/// Tr_E[U (ρ ⊗ |0⟩⟨0|) U†] — the dilate-apply-trace route, kept separate
/// from the Kraus-sum route so the two can be cross-checked.
DensityMatrix dilate_apply_trace(const DensityMatrix& rho, const DilationUnitary& dilation);

/// Kraus sum applied on `targets` of a larger register.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel,
                            const std::vector<int>& targets);

// --- Hybrid maps --------------------------------------------------------------

/// ρ ↦ (1−η)ρ + η MρM†. Trace-preserving iff M†M = I; otherwise the result
/// must be renormalized explicitly (renormalize=true) or the call throws.
struct WeakMeasurement {
    double eta = 0.0;
    CMat m;
    bool renormalize = false;
};

struct WeakMeasurementResult {
    DensityMatrix state;
    bool renormalized = false;
};

WeakMeasurementResult apply_weak_measurement(const DensityMatrix& rho, const WeakMeasurement& wm);

/// U_mix(α) = ∏_{j=0}^{n−2} exp[−iα(X_j X_{j+1} + Y_j Y_{j+1})], open chain,
/// factors multiplied left to right.
CMat mixing_unitary(double alpha, int qubits);

/// Measurement operator M_m with the conditional correction R_m applied on
/// outcome m.
struct FeedbackPair {
    CMat m;
    CMat r;
};

/// ρ ↦ Σ_m R_m M_m ρ M_m† R_m†, packaged as the Kraus set {R_m M_m}.
/// Requires Σ M_m†M_m = I and unitary R_m.
KrausChannel feedback_map(const std::vector<FeedbackPair>& pairs);

}  // namespace qws
