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

#include <nlohmann/json_fwd.hpp>

#include "qws/linalg.hpp"

namespace qws {

/// Orthonormal quadrature-mirror filter pair. The high-pass g is always
/// derived from the low-pass h as g_k = (−1)^k h_{L−1−k}.
///
/// A valid h satisfies, to 1e-12:
///   Σ h_k² = 1,   Σ h_k h_{k+2m} = 0 for m ≠ 0,   Σ h_k = √2.
struct WaveletFilter {
    std::string name;
    Vec h;
    Vec g;

    int length() const { return static_cast<int>(h.size()); }

    /// Built-in family ("haar"/"daub2", "daub4").
    static WaveletFilter named(const std::string& family);

    /// User-supplied low-pass coefficients; validated against the
    /// invariants above (the error message names the violated one and
    /// its residual).
    static WaveletFilter custom(const std::string& name, const Vec& h);

    /// Loads {"name": ..., "h": [...]} ; known names may omit "h".
    static WaveletFilter from_json(const nlohmann::json& doc);
};

/// Block layout of a multi-level coefficient vector:
/// [ approximation | detail level J | detail level J−1 | … | detail level 1 ].
/// Level J is the coarsest scale, level 1 the finest.
struct CoefficientLayout {
    int signal_length = 0;
    int levels = 0;

    static CoefficientLayout make(int signal_length, int levels);

    int approx_length() const { return signal_length >> levels; }
    /// Offset of the detail block for `level` ∈ [1, levels].
    int detail_offset(int level) const;
    int detail_length(int level) const { return signal_length >> level; }
    /// First index that belongs to a detail block (== approx_length()).
    int details_begin() const { return approx_length(); }
    bool is_detail_index(int i) const { return i >= approx_length() && i < signal_length; }
};

struct CoefficientVector {
    Vec values;
    CoefficientLayout layout;
};

struct OrthogonalTransform {
    Mat matrix;
    int levels = 0;
    WaveletFilter filter;
    CoefficientLayout layout;

    int size() const { return static_cast<int>(matrix.rows()); }
};

/// Full N×N orthogonal matrix performing `levels` of periodized decimated
/// filtering; row ordering follows CoefficientLayout. N must be a power of
/// two and levels ≤ log2(N). Filters longer than a block are periodized
/// (coefficients folded mod the block size), which keeps the matrix exactly
/// orthogonal at every admissible level.
OrthogonalTransform build_wavelet_matrix(const WaveletFilter& filter, int n, int levels);

/// Pyramid algorithm with periodic (circular) convolution; the reference
/// the matrix route is checked against.
CoefficientVector mallat_forward(const Vec& signal, const WaveletFilter& filter, int levels);

/// Exact inverse of mallat_forward.
Vec mallat_inverse(const CoefficientVector& coeffs, const WaveletFilter& filter);

// --- Givens factorization -------------------------------------------------

struct GivensRotation {
    int i = 0;
    int j = 0;
    double theta = 0.0;
};

/// W = G(r_1)·G(r_2)·…·G(r_K)·diag(signs), where G(i,j,θ) is the identity
/// except for the 2×2 block [[cosθ, −sinθ],[sinθ, cosθ]] on rows/cols (i,j).
struct GivensPlan {
    std::vector<GivensRotation> rotations;
    Vec signs;
};

/// Column-major lower-triangular elimination of an orthogonal matrix.
/// Throws if W is not orthogonal within 1e-10 (message carries the residual).
GivensPlan givens_factorize(const Mat& w);

/// Multiplies out the plan: rotations in order, then the sign diagonal.
Mat givens_replay(const GivensPlan& plan, int n);

/// Applies the plan to a vector without forming the matrix.
Vec givens_apply(const GivensPlan& plan, const Vec& x);

struct RotationSummary {
    std::size_t count = 0;
    int depth = 0;  // greedy layering over disjoint index pairs
};

RotationSummary rotation_count_report(const GivensPlan& plan);

// --- I/O -------------------------------------------------------------------

/// Row-major CSV with %.17g entries.
void write_matrix_csv(const Mat& m, const std::string& path);
Mat read_matrix_csv(const std::string& path);

}  // namespace qws
