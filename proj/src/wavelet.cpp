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
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qws/io.hpp"

namespace qws {

namespace {

constexpr double kFilterTol = 1e-12;

Vec quadrature_mirror(const Vec& h) {
    const long l = h.size();
    Vec g(l);
    for (long k = 0; k < l; ++k) {
        g[k] = ((k % 2 == 0) ? 1.0 : -1.0) * h[l - 1 - k];
    }
    return g;
}

void validate_lowpass(const Vec& h) {
    if (h.size() < 2 || h.size() % 2 != 0) {
        throw std::invalid_argument("filter: h must have even length >= 2, got " +
                                    std::to_string(h.size()));
    }
    const double norm2 = h.squaredNorm();
    if (std::abs(norm2 - 1.0) > kFilterTol) {
        throw std::invalid_argument("filter: sum of h_k^2 must be 1, residual " +
                                    format_g17(std::abs(norm2 - 1.0)));
    }
    const double sum = h.sum();
    if (std::abs(sum - std::sqrt(2.0)) > kFilterTol) {
        throw std::invalid_argument("filter: sum of h_k must be sqrt(2), residual " +
                                    format_g17(std::abs(sum - std::sqrt(2.0))));
    }
    for (long m = 1; 2 * m < h.size(); ++m) {
        double dot = 0.0;
        for (long k = 0; k + 2 * m < h.size(); ++k) dot += h[k] * h[k + 2 * m];
        if (std::abs(dot) > kFilterTol) {
            throw std::invalid_argument("filter: even-shift orthogonality violated at shift " +
                                        std::to_string(2 * m) + ", residual " +
                                        format_g17(std::abs(dot)));
        }
    }
}

}  // namespace

WaveletFilter WaveletFilter::named(const std::string& family) {
    const double r2 = 1.0 / std::sqrt(2.0);
    if (family == "haar" || family == "daub2") {
        Vec h(2);
        h << r2, r2;
        return WaveletFilter{family, h, quadrature_mirror(h)};
    }
    if (family == "daub4") {
        const double s3 = std::sqrt(3.0);
        const double d = 4.0 * std::sqrt(2.0);
        Vec h(4);
        h << (1.0 + s3) / d, (3.0 + s3) / d, (3.0 - s3) / d, (1.0 - s3) / d;
        return WaveletFilter{family, h, quadrature_mirror(h)};
    }
    throw std::invalid_argument("unknown wavelet family: " + family);
}

WaveletFilter WaveletFilter::custom(const std::string& name, const Vec& h) {
    validate_lowpass(h);
    return WaveletFilter{name, h, quadrature_mirror(h)};
}

WaveletFilter WaveletFilter::from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("filter: expected an object {name, h}");
    for (const auto& [key, _] : doc.items()) {
        if (key != "name" && key != "h") {
            throw std::invalid_argument("filter: unknown key '" + key + "'");
        }
    }
    if (!doc.contains("name")) throw std::invalid_argument("filter: missing key 'name'");
    const std::string name = doc.at("name").get<std::string>();
    if (!doc.contains("h")) return named(name);
    const auto coeffs = doc.at("h").get<std::vector<double>>();
    Vec h = Eigen::Map<const Vec>(coeffs.data(), static_cast<long>(coeffs.size()));
    return custom(name, h);
}

CoefficientLayout CoefficientLayout::make(int signal_length, int levels) {
    const int bits = log2_exact(signal_length, "signal length");
    if (levels < 1 || levels > bits) {
        throw std::invalid_argument("levels must be in [1, log2(N)] = [1, " +
                                    std::to_string(bits) + "], got " + std::to_string(levels));
    }
    return CoefficientLayout{signal_length, levels};
}

int CoefficientLayout::detail_offset(int level) const {
    if (level < 1 || level > levels) {
        throw std::invalid_argument("detail level out of range: " + std::to_string(level));
    }
    // [approx | dJ | dJ-1 | ... | d1]; block for `level` starts where all
    // coarser blocks end.
    int off = approx_length();
    for (int j = levels; j > level; --j) off += detail_length(j);
    return off;
}

namespace {

// One analysis level of size m: x -> [approx | detail], periodized
// convolution with stride-2 decimation. Filters longer than m fold mod m.
void level_forward(const Vec& x, const WaveletFilter& f, Vec& approx, Vec& detail) {
    const long m = x.size();
    const long half = m / 2;
    approx.setZero(half);
    detail.setZero(half);
    for (long k = 0; k < half; ++k) {
        double a = 0.0, d = 0.0;
        for (int i = 0; i < f.length(); ++i) {
            const double v = x[(2 * k + i) % m];
            a += f.h[i] * v;
            d += f.g[i] * v;
        }
        approx[k] = a;
        detail[k] = d;
    }
}

// Transpose of level_forward: scatter each (approx, detail) pair back.
Vec level_inverse(const Vec& approx, const Vec& detail, const WaveletFilter& f) {
    const long half = approx.size();
    const long m = 2 * half;
    Vec x = Vec::Zero(m);
    for (long k = 0; k < half; ++k) {
        for (int i = 0; i < f.length(); ++i) {
            x[(2 * k + i) % m] += approx[k] * f.h[i] + detail[k] * f.g[i];
        }
    }
    return x;
}

}  // namespace

OrthogonalTransform build_wavelet_matrix(const WaveletFilter& filter, int n, int levels) {
    const auto layout = CoefficientLayout::make(n, levels);
    Mat w = Mat::Identity(n, n);
    // Apply each analysis level to the leading block of the accumulated
    // matrix. Row k of the level operator has filter taps at columns
    // (2k+i) mod m, so the product is formed row-sparsely.
    for (int level = 1; level <= levels; ++level) {
        const int m = n >> (level - 1);
        const int half = m / 2;
        Mat top(m, n);
        for (int k = 0; k < half; ++k) {
            Vec arow = Vec::Zero(n);
            Vec drow = Vec::Zero(n);
            for (int i = 0; i < filter.length(); ++i) {
                arow += filter.h[i] * w.row((2 * k + i) % m);
                drow += filter.g[i] * w.row((2 * k + i) % m);
            }
            top.row(k) = arow;
            top.row(half + k) = drow;
        }
        w.topRows(m) = top;
    }
    return OrthogonalTransform{std::move(w), levels, filter, layout};
}

CoefficientVector mallat_forward(const Vec& signal, const WaveletFilter& filter, int levels) {
    const auto layout = CoefficientLayout::make(static_cast<int>(signal.size()), levels);
    Vec out(signal.size());
    Vec approx = signal;
    Vec next, detail;
    for (int level = 1; level <= levels; ++level) {
        level_forward(approx, filter, next, detail);
        out.segment(layout.detail_offset(level), layout.detail_length(level)) = detail;
        approx = next;
    }
    out.head(layout.approx_length()) = approx;
    return CoefficientVector{std::move(out), layout};
}

Vec mallat_inverse(const CoefficientVector& coeffs, const WaveletFilter& filter) {
    const auto& layout = coeffs.layout;
    if (coeffs.values.size() != layout.signal_length) {
        throw std::invalid_argument("coefficient vector length " +
                                    std::to_string(coeffs.values.size()) +
                                    " does not match layout length " +
                                    std::to_string(layout.signal_length));
    }
    Vec approx = coeffs.values.head(layout.approx_length());
    for (int level = layout.levels; level >= 1; --level) {
        const Vec detail =
            coeffs.values.segment(layout.detail_offset(level), layout.detail_length(level));
        approx = level_inverse(approx, detail, filter);
    }
    return approx;
}

void write_matrix_csv(const Mat& m, const std::string& path) {
    std::string out;
    for (long r = 0; r < m.rows(); ++r) {
        for (long c = 0; c < m.cols(); ++c) {
            if (c) out += ',';
            out += format_g17(m(r, c));
        }
        out += '\n';
    }
    atomic_write(path, out);
}

Mat read_matrix_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw std::runtime_error("ragged matrix CSV: " + path);
        }
        rows.push_back(std::move(row));
    }
    Mat m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

}  // namespace qws
