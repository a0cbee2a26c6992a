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

#include "qws/wavelet.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "qws/io.hpp"

namespace qws {

namespace {

constexpr double kOrthoTol = 1e-10;
// Entries this small are treated as already eliminated; the replay budget
// (1e-9 Frobenius) absorbs the skipped mass even at N = 1024.
constexpr double kSkipTol = 1e-14;

void check_rotation(const GivensRotation& r, long n) {
    if (r.i < 0 || r.j < 0 || r.i >= n || r.j >= n) {
        throw std::invalid_argument("rotation index out of range: (" + std::to_string(r.i) +
                                    ", " + std::to_string(r.j) + ") for size " +
                                    std::to_string(n));
    }
    if (r.i == r.j) {
        throw std::invalid_argument("rotation must act on two distinct coordinates, got i = j = " +
                                    std::to_string(r.i));
    }
}

}  // namespace

GivensPlan givens_factorize(const Mat& w) {
    const long n = w.rows();
    if (w.cols() != n) throw std::invalid_argument("givens_factorize: matrix must be square");
    const double ortho = orthogonality_residual(w);
    if (ortho > kOrthoTol) {
        throw std::invalid_argument("givens_factorize: input not orthogonal, ||WW^T - I||_F = " +
                                    format_g17(ortho));
    }

    // Column-major elimination of the lower triangle by left rotations.
    // Working on the transpose keeps the row updates contiguous.
    Mat rt = w.transpose();
    GivensPlan plan;
    for (long col = 0; col + 1 < n; ++col) {
        for (long row = col + 1; row < n; ++row) {
            const double b = rt(col, row);  // = R(row, col)
            if (std::abs(b) <= kSkipTol) continue;
            const double a = rt(col, col);
            const double r = std::hypot(a, b);
            const double c = a / r;
            const double s = -b / r;
            const Vec pivot = c * rt.col(col) - s * rt.col(row);
            const Vec other = s * rt.col(col) + c * rt.col(row);
            rt.col(col) = pivot;
            rt.col(row) = other;
            // The applied rotation G(col,row,atan2(s,c)) maps W toward the
            // diagonal; its inverse, with the angle negated, goes in the plan.
            plan.rotations.push_back(
                {static_cast<int>(col), static_cast<int>(row), std::atan2(b, a)});
        }
    }
    plan.signs = Vec(n);
    for (long k = 0; k < n; ++k) plan.signs[k] = rt(k, k) < 0.0 ? -1.0 : 1.0;
    return plan;
}

Mat givens_replay(const GivensPlan& plan, int n) {
    if (plan.signs.size() != 0 && plan.signs.size() != n) {
        throw std::invalid_argument("sign diagonal length does not match size");
    }
    Mat m = Mat::Identity(n, n);
    // Right-multiplying by G(i,j,θ) mixes columns i and j.
    for (const auto& rot : plan.rotations) {
        check_rotation(rot, n);
        const double c = std::cos(rot.theta);
        const double s = std::sin(rot.theta);
        const Vec ci = c * m.col(rot.i) + s * m.col(rot.j);
        const Vec cj = -s * m.col(rot.i) + c * m.col(rot.j);
        m.col(rot.i) = ci;
        m.col(rot.j) = cj;
    }
    if (plan.signs.size() == n) {
        for (int k = 0; k < n; ++k) m.col(k) *= plan.signs[k];
    }
    return m;
}

Vec givens_apply(const GivensPlan& plan, const Vec& x) {
    const long n = x.size();
    Vec y = x;
    if (plan.signs.size() == n) y = plan.signs.cwiseProduct(y);
    // y = G_1 ... G_K D x, built by applying factors right to left.
    for (auto it = plan.rotations.rbegin(); it != plan.rotations.rend(); ++it) {
        check_rotation(*it, n);
        const double c = std::cos(it->theta);
        const double s = std::sin(it->theta);
        const double yi = c * y[it->i] - s * y[it->j];
        const double yj = s * y[it->i] + c * y[it->j];
        y[it->i] = yi;
        y[it->j] = yj;
    }
    return y;
}

RotationSummary rotation_count_report(const GivensPlan& plan) {
    RotationSummary summary;
    summary.count = plan.rotations.size();
    std::unordered_map<int, int> busy;  // wire -> layer of its last rotation
    for (const auto& rot : plan.rotations) {
        const int layer = 1 + std::max(busy.count(rot.i) ? busy[rot.i] : 0,
                                       busy.count(rot.j) ? busy[rot.j] : 0);
        busy[rot.i] = layer;
        busy[rot.j] = layer;
        summary.depth = std::max(summary.depth, layer);
    }
    return summary;
}

}  // namespace qws
