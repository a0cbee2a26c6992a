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
#include <vector>

#include "qws/linalg.hpp"

namespace qws {

// Qubit 0 is the least-significant bit of the basis index throughout.

struct StateVector {
    int qubits = 0;
    CVec amps;

    // Encoding metadata, kept so classical data can be recovered after
    // measurement: the pre-normalization 2-norm and the length before
    // zero padding (0 when not produced by an encoder).
    double input_norm = 1.0;
    int original_length = 0;

    long dim() const { return amps.size(); }
    double norm_error() const { return std::abs(amps.norm() - 1.0); }
};

struct DensityMatrix {
    int qubits = 0;
    CMat rho;

    long dim() const { return rho.rows(); }
    double trace_error() const { return std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag()); }
    double hermiticity_error() const;
    /// Most negative eigenvalue, clamped at 0 from above (0 when PSD).
    double min_eigenvalue() const;
    bool valid(double trace_tol = 1e-12, double psd_tol = -1e-10) const;
};

struct BlochVector {
    double x = 0.0, y = 0.0, z = 0.0;
};

/// One letter per qubit, index k = qubit k. E.g. "ZX" is Z on qubit 0,
/// X on qubit 1.
struct PauliString {
    std::string letters;

    PauliString(const char* s) : PauliString(std::string(s)) {}
    explicit PauliString(std::string s);
    int qubits() const { return static_cast<int>(letters.size()); }
};

// --- Encodings ---------------------------------------------------------------

/// amps_j = x_j / ‖x‖ after zero-padding to a power of two (at least
/// min_length when given). Throws on all-zero input.
StateVector amplitude_encode(const Vec& x, int min_length = 0);

/// One qubit with ⟨X⟩ = v, prepared as R_z(arccos v)|+⟩. Requires |v| ≤ 1.
StateVector expectation_encode(double v);

/// 2^{−n/2} Σ_j e^{iα d_j}|j⟩ (uniform superposition, then diagonal phases).
StateVector phase_encode(const Vec& d, double alpha);

/// Magnitude-and-sign encoding: magnitudes as amplitudes over the index
/// register (low qubits), sign as a ±1 relative phase on one extra qubit
/// (the top qubit): amps ∝ |x_j| (|0⟩ + σ_j |1⟩)|j⟩ with σ_j = −1 iff x_j < 0.
StateVector hybrid_encode(const Vec& x);

/// Recovers the signal encoded by hybrid_encode (uses the stored norm).
Vec hybrid_decode(const StateVector& psi);

DensityMatrix to_density(const StateVector& psi);

/// Tr(ρP); throws if the trace has imaginary part above 1e-10 or lengths
/// mismatch.
double expect(const DensityMatrix& rho, const PauliString& p);
double expect(const StateVector& psi, const PauliString& p);

/// (⟨X⟩, ⟨Y⟩, ⟨Z⟩) of a single-qubit state.
BlochVector bloch(const DensityMatrix& rho);

/// Reduced density matrix on `keep` (indices need not be sorted).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// U embedded on `targets` (identity elsewhere); targets[k] carries bit k of
/// U's index. U must be unitary within 1e-10.
StateVector apply_unitary(const StateVector& psi, const CMat& u, const std::vector<int>& targets);
DensityMatrix apply_unitary(const DensityMatrix& rho, const CMat& u, const std::vector<int>& targets);

/// Full 2^n × 2^n embedding of an operator on `targets`; works for any
/// matrix, not just unitaries.
CMat embed_operator(const CMat& op, const std::vector<int>& targets, int qubits);

// --- Rescaling ---------------------------------------------------------------

enum class RescaleMode {
    MaxAbs,        // d = y / max|y_i|  (default; keeps zeros at zero)
    MinMaxAffine,  // d = 2(y−min)/(max−min) − 1
};

struct RescaleRecord {
    RescaleMode mode = RescaleMode::MaxAbs;
    double scale = 1.0;  // max|y| for MaxAbs; (max−min)/2 for affine
    double offset = 0.0; // (max+min)/2 for affine, 0 otherwise
};

struct RescaledVector {
    Vec d;
    RescaleRecord record;
};

/// Maps y into [−1,1]; the record allows an exact undo.
RescaledVector rescale_to_unit(const Vec& y, RescaleMode mode = RescaleMode::MaxAbs);
Vec rescale_undo(const RescaledVector& r);
Vec rescale_undo(const Vec& d, const RescaleRecord& record);

// --- I/O ----------------------------------------------------------------------

/// CSV rows (index, re, im) with %.17g.
void write_state_csv(const StateVector& psi, const std::string& path);

}  // namespace qws
