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

#include "qws/channels.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qws/io.hpp"

namespace qws {

namespace {

constexpr double kCompletenessTol = 1e-12;

void check_param(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must be in [0,1], got " + format_g17(v));
    }
}

CMat pauli_z() {
    CMat z(2, 2);
    z << 1.0, 0.0, 0.0, -1.0;
    return z;
}

}  // namespace

KrausChannel KrausChannel::from_ops(std::vector<CMat> ops) {
    if (ops.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
    const long d = ops.front().rows();
    for (const auto& k : ops) {
        if (k.rows() != d || k.cols() != d) {
            throw std::invalid_argument("Kraus operators must be square and equally sized");
        }
    }
    KrausChannel ch;
    ch.qubits = log2_exact(d, "Kraus operator dimension");
    ch.ops = std::move(ops);
    const double res = ch.completeness_residual();
    if (res > kCompletenessTol) {
        throw std::invalid_argument("Kraus completeness violated: ||sum K^dag K - I||_F = " +
                                    format_g17(res));
    }
    return ch;
}

double KrausChannel::completeness_residual() const {
    const long d = ops.front().rows();
    CMat sum = CMat::Zero(d, d);
    for (const auto& k : ops) sum += k.adjoint() * k;
    return (sum - CMat::Identity(d, d)).norm();
}

nlohmann::json KrausChannel::to_json() const {
    nlohmann::json ops_json = nlohmann::json::array();
    for (const auto& k : ops) {
        nlohmann::json entries = nlohmann::json::array();  // row-major [re, im] pairs
        for (long r = 0; r < k.rows(); ++r) {
            for (long c = 0; c < k.cols(); ++c) {
                entries.push_back({k(r, c).real(), k(r, c).imag()});
            }
        }
        ops_json.push_back({{"dim", k.rows()}, {"entries", entries}});
    }
    return {{"kraus", ops_json}};
}

KrausChannel KrausChannel::from_json(const nlohmann::json& doc) {
    std::vector<CMat> ops;
    for (const auto& op : doc.at("kraus")) {
        const long d = op.at("dim").get<long>();
        const auto& entries = op.at("entries");
        if (static_cast<long>(entries.size()) != d * d) {
            throw std::invalid_argument("channel JSON: entry count does not match dim^2");
        }
        CMat k(d, d);
        long idx = 0;
        for (long r = 0; r < d; ++r) {
            for (long c = 0; c < d; ++c, ++idx) {
                k(r, c) = complex(entries[idx][0].get<double>(), entries[idx][1].get<double>());
            }
        }
        ops.push_back(std::move(k));
    }
    return from_ops(std::move(ops));
}

KrausChannel phase_damping(double gamma) {
    check_param(gamma, "gamma");
    CMat k0 = CMat::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - gamma);
    CMat k1 = CMat::Zero(2, 2);
    k1(1, 1) = std::sqrt(gamma);
    return KrausChannel::from_ops({k0, k1});
}

KrausChannel phase_flip(double gamma) {
    check_param(gamma, "gamma");
    const CMat i2 = CMat::Identity(2, 2);
    return KrausChannel::from_ops({std::sqrt(1.0 - gamma) * i2, std::sqrt(gamma) * pauli_z()});
}

KrausChannel ancilla_shrink_channel(double s) {
    check_param(s, "retention s");
    const CMat i2 = CMat::Identity(2, 2);
    return KrausChannel::from_ops({std::sqrt(s) * i2, std::sqrt(1.0 - s) * pauli_z()});
}

KrausChannel amplitude_damping(double gamma) {
    check_param(gamma, "gamma");
    CMat k0 = CMat::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - gamma);
    CMat k1 = CMat::Zero(2, 2);
    k1(0, 1) = std::sqrt(gamma);
    return KrausChannel::from_ops({k0, k1});
}

double retention_for_multiplier(double m) {
    check_param(m, "multiplier");
    return (1.0 + m) / 2.0;
}

RetentionVector RetentionVector::from_retentions(const Vec& s) {
    RetentionVector rv;
    rv.s = s;
    rv.theta = Vec(s.size());
    for (long j = 0; j < s.size(); ++j) {
        check_param(s[j], "retention s");
        rv.theta[j] = std::acos(std::sqrt(s[j]));
    }
    return rv;
}

RetentionVector RetentionVector::from_multipliers(const Vec& m) {
    Vec s(m.size());
    for (long j = 0; j < m.size(); ++j) s[j] = retention_for_multiplier(m[j]);
    return from_retentions(s);
}

DilationUnitary ancilla_dilation(const RetentionVector& retention, int system_qubits) {
    const long sys_dim = 1L << system_qubits;
    if (retention.size() != sys_dim) {
        throw std::invalid_argument("retention vector length " + std::to_string(retention.size()) +
                                    " does not match system dimension " + std::to_string(sys_dim));
    }
    DilationUnitary dil;
    dil.system_qubits = system_qubits;
    dil.ancilla_qubits = 1;
    dil.u = CMat::Zero(2 * sys_dim, 2 * sys_dim);
    const complex minus_i(0.0, -1.0);
    // Block diagonal over system states: conditioned on |j>, the ancilla
    // (top qubit) turns by exp(-i θ_j X).
    for (long j = 0; j < sys_dim; ++j) {
        const double c = std::cos(retention.theta[j]);
        const double s = std::sin(retention.theta[j]);
        dil.u(j, j) = c;
        dil.u(j, sys_dim + j) = minus_i * s;
        dil.u(sys_dim + j, j) = minus_i * s;
        dil.u(sys_dim + j, sys_dim + j) = c;
    }
    return dil;
}

DilationUnitary ancilla_shrink_dilation(double s) {
    check_param(s, "retention s");
    const double theta = std::acos(std::sqrt(s));
    const double c = std::cos(theta);
    const complex ms(0.0, -std::sin(theta));
    DilationUnitary dil;
    dil.system_qubits = 1;
    dil.ancilla_qubits = 1;
    // cosθ·I − i sinθ·(X_anc ⊗ Z_sys), ancilla on the top qubit.
    dil.u = CMat::Zero(4, 4);
    dil.u(0, 0) = c;
    dil.u(1, 1) = c;
    dil.u(2, 2) = c;
    dil.u(3, 3) = c;
    dil.u(2, 0) = ms;
    dil.u(0, 2) = ms;
    dil.u(3, 1) = -ms;
    dil.u(1, 3) = -ms;
    return dil;
}

KrausChannel kraus_from_dilation(const DilationUnitary& dilation) {
    const double res = unitarity_residual(dilation.u);
    if (res > 1e-10) {
        throw std::invalid_argument("dilation is not unitary, ||U^dag U - I||_F = " +
                                    format_g17(res));
    }
    const long sys_dim = dilation.system_dim();
    std::vector<CMat> ops;
    for (long e = 0; e < dilation.ancilla_dim(); ++e) {
        // K_e = <e|U|0>: rows of the e-th ancilla block, columns of the 0 block.
        ops.push_back(dilation.u.block(e * sys_dim, 0, sys_dim, sys_dim));
    }
    return KrausChannel::from_ops(std::move(ops));
}

DensityMatrix dilate_apply_trace(const DensityMatrix& rho, const DilationUnitary& dilation) {
    if (rho.qubits != dilation.system_qubits) {
        throw std::invalid_argument("state does not match dilation system size");
    }
    const long sys_dim = dilation.system_dim();
    const long anc_dim = dilation.ancilla_dim();
    // rho ⊗ |0..0><0..0| with the ancilla on the top qubits.
    CMat joint = CMat::Zero(sys_dim * anc_dim, sys_dim * anc_dim);
    joint.topLeftCorner(sys_dim, sys_dim) = rho.rho;
    joint = dilation.u * joint * dilation.u.adjoint();

    DensityMatrix out;
    out.qubits = dilation.system_qubits;
    out.rho = CMat::Zero(sys_dim, sys_dim);
    for (long e = 0; e < anc_dim; ++e) {
        out.rho += joint.block(e * sys_dim, e * sys_dim, sys_dim, sys_dim);
    }
    return out;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel,
                            const std::vector<int>& targets) {
    if (static_cast<std::size_t>(channel.qubits) != targets.size()) {
        throw std::invalid_argument("channel acts on " + std::to_string(channel.qubits) +
                                    " qubits but " + std::to_string(targets.size()) +
                                    " targets were given");
    }
    DensityMatrix out;
    out.qubits = rho.qubits;
    out.rho = CMat::Zero(rho.dim(), rho.dim());
    for (const auto& k : channel.ops) {
        const CMat full = embed_operator(k, targets, rho.qubits);
        out.rho += full * rho.rho * full.adjoint();
    }
    return out;
}

WeakMeasurementResult apply_weak_measurement(const DensityMatrix& rho, const WeakMeasurement& wm) {
    if (!(wm.eta >= 0.0 && wm.eta <= 1.0)) {
        throw std::invalid_argument("eta must be in [0,1], got " + format_g17(wm.eta));
    }
    if (wm.m.rows() != rho.dim() || wm.m.cols() != rho.dim()) {
        throw std::invalid_argument("measurement operator dimension mismatch");
    }
    WeakMeasurementResult result;
    result.state.qubits = rho.qubits;
    result.state.rho = (1.0 - wm.eta) * rho.rho + wm.eta * wm.m * rho.rho * wm.m.adjoint();
    const double tr = result.state.rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-12) {
        if (!wm.renormalize) {
            throw std::invalid_argument(
                "weak measurement is not trace preserving (trace " + format_g17(tr) +
                "); enable renormalization to use a non-isometric operator");
        }
        if (tr <= 0.0) throw std::invalid_argument("weak measurement produced a zero-trace state");
        result.state.rho /= tr;
        result.renormalized = true;
    }
    return result;
}

CMat mixing_unitary(double alpha, int qubits) {
    if (qubits < 2) {
        throw std::invalid_argument("mixing unitary needs at least 2 qubits, got " +
                                    std::to_string(qubits));
    }
    const long dim = 1L << qubits;
    // exp[-iα(XX+YY)] acts only on the {|01>,|10>} block:
    // [[cos2α, -i sin2α],[-i sin2α, cos2α]].
    CMat pair = CMat::Identity(4, 4);
    const double c = std::cos(2.0 * alpha);
    const complex ms(0.0, -std::sin(2.0 * alpha));
    pair(1, 1) = c;
    pair(1, 2) = ms;
    pair(2, 1) = ms;
    pair(2, 2) = c;

    CMat u = CMat::Identity(dim, dim);
    for (int j = 0; j + 1 < qubits; ++j) {
        u *= embed_operator(pair, {j, j + 1}, qubits);
    }
    return u;
}

KrausChannel feedback_map(const std::vector<FeedbackPair>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("feedback map needs at least one pair");
    const long d = pairs.front().m.rows();
    CMat completeness = CMat::Zero(d, d);
    for (const auto& p : pairs) completeness += p.m.adjoint() * p.m;
    const double res = (completeness - CMat::Identity(d, d)).norm();
    if (res > kCompletenessTol) {
        throw std::invalid_argument("measurement set incomplete: ||sum M^dag M - I||_F = " +
                                    format_g17(res));
    }
    std::vector<CMat> composite;
    for (const auto& p : pairs) {
        const double ur = unitarity_residual(p.r);
        if (ur > 1e-10) {
            throw std::invalid_argument("feedback rotation is not unitary, residual " +
                                        format_g17(ur));
        }
        composite.push_back(p.r * p.m);
    }
    return KrausChannel::from_ops(std::move(composite));
}

}  // namespace qws
