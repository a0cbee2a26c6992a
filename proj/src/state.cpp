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

#include "qws/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qws/io.hpp"

namespace qws {

namespace {

constexpr double kUnitaryTol = 1e-10;

long next_power_of_two(long n) {
    long p = 1;
    while (p < n) p <<= 1;
    return p;
}

void check_targets(const std::vector<int>& targets, int qubits) {
    if (targets.empty()) throw std::invalid_argument("target list is empty");
    for (int t : targets) {
        if (t < 0 || t >= qubits) {
            throw std::invalid_argument("target qubit " + std::to_string(t) +
                                        " out of range for " + std::to_string(qubits) +
                                        " qubits");
        }
    }
    for (std::size_t a = 0; a < targets.size(); ++a) {
        for (std::size_t b = a + 1; b < targets.size(); ++b) {
            if (targets[a] == targets[b]) {
                throw std::invalid_argument("duplicate target qubit " +
                                            std::to_string(targets[a]));
            }
        }
    }
}

// Index with bit k of `sub` routed to qubit targets[k].
long scatter_bits(long sub, const std::vector<int>& targets) {
    long idx = 0;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        idx |= ((sub >> k) & 1L) << targets[k];
    }
    return idx;
}

}  // namespace

double DensityMatrix::hermiticity_error() const {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMat> solver((rho + rho.adjoint()) / 2.0);
    return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::valid(double trace_tol, double psd_tol) const {
    return hermiticity_error() <= 1e-12 && trace_error() <= trace_tol &&
           min_eigenvalue() >= psd_tol;
}

PauliString::PauliString(std::string s) : letters(std::move(s)) {
    if (letters.empty()) throw std::invalid_argument("empty Pauli string");
    for (char c : letters) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument(std::string("invalid Pauli letter '") + c + "'");
        }
    }
}

StateVector amplitude_encode(const Vec& x, int min_length) {
    const double norm = x.norm();
    if (norm == 0.0) throw std::invalid_argument("amplitude_encode: all-zero input");
    const long dim = next_power_of_two(std::max<long>(x.size(), std::max(min_length, 1)));
    CVec amps = CVec::Zero(dim);
    for (long j = 0; j < x.size(); ++j) amps[j] = x[j] / norm;
    StateVector psi;
    psi.qubits = log2_exact(dim, "state dimension");
    psi.amps = std::move(amps);
    psi.input_norm = norm;
    psi.original_length = static_cast<int>(x.size());
    return psi;
}

StateVector expectation_encode(double v) {
    if (std::abs(v) > 1.0) {
        throw std::invalid_argument("expectation_encode: |v| must be <= 1, got " + format_g17(v));
    }
    // R_z(φ)|+> with φ = arccos(v): amplitudes e^{∓iφ/2}/√2, so <X> = cos φ = v.
    const double phi = std::acos(v);
    StateVector psi;
    psi.qubits = 1;
    psi.amps = CVec(2);
    const complex i(0.0, 1.0);
    psi.amps[0] = std::exp(-i * (phi / 2.0)) / std::sqrt(2.0);
    psi.amps[1] = std::exp(i * (phi / 2.0)) / std::sqrt(2.0);
    psi.original_length = 1;
    return psi;
}

StateVector phase_encode(const Vec& d, double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("phase_encode: alpha must be >= 0");
    const long dim = d.size();
    const int n = log2_exact(dim, "phase_encode input length");
    StateVector psi;
    psi.qubits = n;
    psi.amps = CVec(dim);
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    const complex i(0.0, 1.0);
    for (long j = 0; j < dim; ++j) psi.amps[j] = amp * std::exp(i * (alpha * d[j]));
    psi.original_length = static_cast<int>(dim);
    return psi;
}

StateVector hybrid_encode(const Vec& x) {
    const double norm = x.norm();
    if (norm == 0.0) throw std::invalid_argument("hybrid_encode: all-zero input");
    const long base = next_power_of_two(x.size());
    const int n = log2_exact(base, "index register");
    StateVector psi;
    psi.qubits = n + 1;  // sign qubit on top
    psi.amps = CVec::Zero(2 * base);
    const double scale = 1.0 / (norm * std::sqrt(2.0));
    for (long j = 0; j < x.size(); ++j) {
        const double sign = x[j] < 0.0 ? -1.0 : 1.0;
        psi.amps[j] = std::abs(x[j]) * scale;
        psi.amps[base + j] = sign * std::abs(x[j]) * scale;
    }
    psi.input_norm = norm;
    psi.original_length = static_cast<int>(x.size());
    return psi;
}

Vec hybrid_decode(const StateVector& psi) {
    if (psi.qubits < 1) throw std::invalid_argument("hybrid_decode: need a sign qubit");
    const long base = psi.dim() / 2;
    const long len = psi.original_length > 0 ? psi.original_length : base;
    Vec x(len);
    for (long j = 0; j < len; ++j) {
        const double mag = std::abs(psi.amps[j]) * std::sqrt(2.0) * psi.input_norm;
        const double rel = (psi.amps[base + j] * std::conj(psi.amps[j])).real();
        x[j] = rel < 0.0 ? -mag : mag;
    }
    return x;
}

DensityMatrix to_density(const StateVector& psi) {
    DensityMatrix rho;
    rho.qubits = psi.qubits;
    rho.rho = psi.amps * psi.amps.adjoint();
    return rho;
}

namespace {

// P|j> = c_j |j ^ flip_mask>; returns (flip_mask, phase function).
struct PauliAction {
    long flip_mask = 0;
    std::vector<char> letters;

    complex phase(long j) const {
        complex c(1.0, 0.0);
        for (std::size_t q = 0; q < letters.size(); ++q) {
            const bool bit = (j >> q) & 1L;
            switch (letters[q]) {
                case 'X': break;
                case 'Y': c *= bit ? complex(0.0, -1.0) : complex(0.0, 1.0); break;
                case 'Z': c *= bit ? -1.0 : 1.0; break;
                default: break;
            }
        }
        return c;
    }
};

PauliAction pauli_action(const PauliString& p) {
    PauliAction act;
    act.letters.assign(p.letters.begin(), p.letters.end());
    for (int q = 0; q < p.qubits(); ++q) {
        if (p.letters[q] == 'X' || p.letters[q] == 'Y') act.flip_mask |= 1L << q;
    }
    return act;
}

}  // namespace

double expect(const DensityMatrix& rho, const PauliString& p) {
    if (p.qubits() != rho.qubits) {
        throw std::invalid_argument("Pauli string length " + std::to_string(p.qubits()) +
                                    " does not match state on " + std::to_string(rho.qubits) +
                                    " qubits");
    }
    const auto act = pauli_action(p);
    complex tr(0.0, 0.0);
    for (long j = 0; j < rho.dim(); ++j) {
        tr += act.phase(j) * rho.rho(j, j ^ act.flip_mask);
    }
    if (std::abs(tr.imag()) > 1e-10) {
        throw std::invalid_argument("expectation has imaginary part " + format_g17(tr.imag()));
    }
    return tr.real();
}

double expect(const StateVector& psi, const PauliString& p) {
    return expect(to_density(psi), p);
}

BlochVector bloch(const DensityMatrix& rho) {
    if (rho.qubits != 1) {
        throw std::invalid_argument("bloch: expected a 1-qubit state, got " +
                                    std::to_string(rho.qubits) + " qubits");
    }
    return BlochVector{expect(rho, PauliString("X")), expect(rho, PauliString("Y")),
                       expect(rho, PauliString("Z"))};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    check_targets(keep, rho.qubits);
    std::vector<int> traced;
    for (int q = 0; q < rho.qubits; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
    }
    const long keep_dim = 1L << keep.size();
    const long trace_dim = 1L << traced.size();
    DensityMatrix out;
    out.qubits = static_cast<int>(keep.size());
    out.rho = CMat::Zero(keep_dim, keep_dim);
    for (long r = 0; r < keep_dim; ++r) {
        const long rbase = scatter_bits(r, keep);
        for (long c = 0; c < keep_dim; ++c) {
            const long cbase = scatter_bits(c, keep);
            complex sum(0.0, 0.0);
            for (long e = 0; e < trace_dim; ++e) {
                const long env = scatter_bits(e, traced);
                sum += rho.rho(rbase | env, cbase | env);
            }
            out.rho(r, c) = sum;
        }
    }
    return out;
}

CMat embed_operator(const CMat& op, const std::vector<int>& targets, int qubits) {
    check_targets(targets, qubits);
    const long sub_dim = 1L << targets.size();
    if (op.rows() != sub_dim || op.cols() != sub_dim) {
        throw std::invalid_argument("operator dimension " + std::to_string(op.rows()) +
                                    " does not match 2^" + std::to_string(targets.size()) +
                                    " targets");
    }
    const long dim = 1L << qubits;
    long rest_mask = dim - 1;
    for (int t : targets) rest_mask &= ~(1L << t);

    CMat full = CMat::Zero(dim, dim);
    // Enumerate the non-target bit patterns directly.
    for (long rest = 0; rest < dim; ++rest) {
        if ((rest & rest_mask) != rest) continue;
        for (long r = 0; r < sub_dim; ++r) {
            const long row = rest | scatter_bits(r, targets);
            for (long c = 0; c < sub_dim; ++c) {
                full(row, rest | scatter_bits(c, targets)) = op(r, c);
            }
        }
    }
    return full;
}

namespace {

void check_unitary(const CMat& u) {
    const double res = unitarity_residual(u);
    if (res > kUnitaryTol) {
        throw std::invalid_argument("matrix is not unitary, ||U^dag U - I||_F = " +
                                    format_g17(res));
    }
}

}  // namespace

StateVector apply_unitary(const StateVector& psi, const CMat& u, const std::vector<int>& targets) {
    check_targets(targets, psi.qubits);
    check_unitary(u);
    const long sub_dim = 1L << targets.size();
    if (u.rows() != sub_dim) {
        throw std::invalid_argument("unitary dimension does not match target count");
    }
    const long dim = psi.dim();
    long rest_mask = dim - 1;
    for (int t : targets) rest_mask &= ~(1L << t);

    StateVector out = psi;
    CVec gathered(sub_dim);
    for (long rest = 0; rest < dim; ++rest) {
        if ((rest & rest_mask) != rest) continue;
        for (long k = 0; k < sub_dim; ++k) gathered[k] = psi.amps[rest | scatter_bits(k, targets)];
        const CVec mixed = u * gathered;
        for (long k = 0; k < sub_dim; ++k) out.amps[rest | scatter_bits(k, targets)] = mixed[k];
    }
    return out;
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const CMat& u,
                            const std::vector<int>& targets) {
    check_targets(targets, rho.qubits);
    check_unitary(u);
    const CMat full = embed_operator(u, targets, rho.qubits);
    DensityMatrix out;
    out.qubits = rho.qubits;
    out.rho = full * rho.rho * full.adjoint();
    return out;
}

RescaledVector rescale_to_unit(const Vec& y, RescaleMode mode) {
    if (y.size() == 0 || y.cwiseAbs().maxCoeff() == 0.0) {
        throw std::invalid_argument("rescale_to_unit: all-zero input");
    }
    RescaledVector out;
    out.record.mode = mode;
    if (mode == RescaleMode::MaxAbs) {
        out.record.scale = y.cwiseAbs().maxCoeff();
        out.record.offset = 0.0;
        out.d = y / out.record.scale;
    } else {
        const double lo = y.minCoeff();
        const double hi = y.maxCoeff();
        if (hi == lo) throw std::invalid_argument("rescale_to_unit: constant input has no affine map");
        out.record.scale = (hi - lo) / 2.0;
        out.record.offset = (hi + lo) / 2.0;
        out.d = (y.array() - out.record.offset) / out.record.scale;
    }
    return out;
}

Vec rescale_undo(const Vec& d, const RescaleRecord& record) {
    return (d.array() * record.scale + record.offset).matrix();
}

Vec rescale_undo(const RescaledVector& r) { return rescale_undo(r.d, r.record); }

void write_state_csv(const StateVector& psi, const std::string& path) {
    std::string out = "index,re,im\n";
    for (long j = 0; j < psi.dim(); ++j) {
        out += std::to_string(j);
        out += ',';
        out += format_g17(psi.amps[j].real());
        out += ',';
        out += format_g17(psi.amps[j].imag());
        out += '\n';
    }
    atomic_write(path, out);
}

}  // namespace qws
