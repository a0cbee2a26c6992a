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

#include "qws/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qws/io.hpp"
#include "qws/rng.hpp"

namespace qws {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string>& known_figures() {
    static const std::vector<std::string> ids = {
        "fig1_dwt",  "fig5_hard",          "fig6_smooth",        "fig3_doppler",
        "fig4_diag", "fig7_power",         "fig8_flag",          "fig9_smooth_ancilla",
        "fig10_phase_encode", "hw_idle",   "hw_randz",
    };
    return ids;
}

const Vec& demo_coefficients() {
    static const Vec d = [] {
        Vec v(8);
        v << 2, 1, 9, 0, 3, -10, 2, 4;
        return v;
    }();
    return d;
}

// --- Config -------------------------------------------------------------------

namespace {

void reject_unknown_keys(const json& doc, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, _] : doc.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
}

ShrinkagePolicy default_policy_for(const std::string& figure) {
    if (figure == "fig5_hard" || figure == "fig8_flag") return ShrinkagePolicy::hard(0.4);
    if (figure == "fig7_power") return ShrinkagePolicy::power_law(1.8);
    return ShrinkagePolicy::cos4();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
    reject_unknown_keys(doc,
                        {"figure", "signal", "signal_path", "N", "snr", "seed", "filter",
                         "levels", "policy", "mode", "shots", "hardware", "output_dir"},
                        "config");
    for (const char* key : {"figure", "seed"}) {
        if (!doc.contains(key)) throw ConfigError(std::string("config: missing key '") + key + "'");
    }

    ExperimentConfig cfg;
    try {
        cfg.figure = doc.at("figure").get<std::string>();
        if (std::find(known_figures().begin(), known_figures().end(), cfg.figure) ==
            known_figures().end()) {
            throw ConfigError("config: unknown figure id '" + cfg.figure + "'");
        }
        cfg.seed = doc.at("seed").get<uint64_t>();
        if (cfg.figure == "fig1_dwt") cfg.n = 8;  // small-register demo unless overridden
        if (doc.contains("signal")) cfg.signal = doc.at("signal").get<std::string>();
        if (cfg.signal != "doppler" && cfg.signal != "custom") {
            throw ConfigError("config: signal must be 'doppler' or 'custom'");
        }
        if (doc.contains("signal_path")) cfg.signal_path = doc.at("signal_path").get<std::string>();
        if (cfg.signal == "custom" && cfg.signal_path.empty()) {
            throw ConfigError("config: missing key 'signal_path' (required when signal=custom)");
        }
        if (doc.contains("N")) cfg.n = doc.at("N").get<int>();
        if (!is_power_of_two(cfg.n) || cfg.n < 8) {
            throw ConfigError("config: N must be a power of two >= 8, got " +
                              std::to_string(cfg.n));
        }
        if (doc.contains("snr")) {
            cfg.snr = doc.at("snr").get<double>();
            if (cfg.snr <= 0.0) throw ConfigError("config: snr must be > 0");
        }
        cfg.filter = doc.contains("filter")
                         ? (doc.at("filter").is_string()
                                ? WaveletFilter::named(doc.at("filter").get<std::string>())
                                : WaveletFilter::from_json(doc.at("filter")))
                         : WaveletFilter::named("daub4");
        if (doc.contains("levels")) cfg.levels = doc.at("levels").get<int>();
        if (cfg.levels < 1 || (1 << cfg.levels) > cfg.n) {
            throw ConfigError("config: levels must be in [1, log2(N)], got " +
                              std::to_string(cfg.levels) + " for N = " + std::to_string(cfg.n));
        }
        cfg.policy = doc.contains("policy") ? ShrinkagePolicy::from_json(doc.at("policy"))
                                            : default_policy_for(cfg.figure);
        if (doc.contains("mode")) cfg.mode = shrink_mode_from_string(doc.at("mode").get<std::string>());
        if (doc.contains("shots")) {
            const long shots = doc.at("shots").get<long>();
            if (shots < 1) throw ConfigError("config: shots must be >= 1");
            cfg.shots = shots;
        }
        if (doc.contains("hardware")) {
            const auto& hw = doc.at("hardware");
            reject_unknown_keys(hw, {"T2"}, "config.hardware");
            if (!hw.contains("T2")) throw ConfigError("config.hardware: missing key 'T2'");
            HardwareModel model;
            model.t2_us = hw.at("T2").get<double>();
            if (model.t2_us <= 0.0) throw ConfigError("config.hardware: T2 must be > 0");
            model.seed = cfg.seed;
            cfg.hardware = model;
        }
        if (doc.contains("output_dir")) cfg.output_dir = doc.at("output_dir").get<std::string>();
    } catch (const ConfigError&) {
        throw;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file: " + path);
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return from_json(doc);
}

json ExperimentConfig::to_json() const {
    json doc{{"figure", figure}, {"signal", signal}, {"N", n},
             {"snr", snr},       {"seed", seed},     {"levels", levels},
             {"mode", to_string(mode)}, {"output_dir", output_dir}};
    if (!signal_path.empty()) doc["signal_path"] = signal_path;
    doc["filter"] = json{{"name", filter.name},
                         {"h", std::vector<double>(filter.h.data(), filter.h.data() + filter.h.size())}};
    doc["policy"] = policy.to_json();
    if (shots) doc["shots"] = *shots;
    if (hardware) doc["hardware"] = json{{"T2", hardware->t2_us}};
    return doc;
}

// --- Recipes ------------------------------------------------------------------

namespace {

struct RecipeContext {
    const ExperimentConfig& cfg;
    fs::path dir;
    RunArtifacts artifacts;
    json report;

    explicit RecipeContext(const ExperimentConfig& config)
        : cfg(config), dir(fs::path(config.output_dir) / config.figure) {
        const std::string resolved = config.to_json().dump();
        report["figure"] = config.figure;
        report["seed"] = config.seed;
        report["config"] = config.to_json();
        report["config_hash"] = hex64(fnv1a64(resolved));
    }

    void csv(const std::string& name, const CsvTable& table) {
        const std::string path = (dir / name).string();
        write_csv(table, path);
        artifacts.files.push_back(path);
    }

    void finish(double wall_time_s) {
        report["wall_time_s"] = wall_time_s;
        const std::string path = (dir / "report.json").string();
        atomic_write(path, report.dump(2) + "\n");
        artifacts.report_path = path;
        artifacts.files.push_back(path);
    }
};

Vec load_signal(const ExperimentConfig& cfg) {
    if (cfg.signal == "doppler") return doppler(cfg.n);
    const Mat m = read_matrix_csv(cfg.signal_path);
    if (m.cols() != 1) throw ConfigError("custom signal CSV must contain a single column");
    return m.col(0);
}

std::optional<long> shots_or(const ExperimentConfig& cfg, std::optional<long> fallback) {
    return cfg.shots ? cfg.shots : fallback;
}

// Standard error of an X-basis shot estimate whose exact mean is mu.
double standard_error(double mu, long shots) {
    return std::sqrt(std::max(0.0, 1.0 - mu * mu) / static_cast<double>(shots));
}

void recipe_fig1(RecipeContext& ctx) {
    const auto& cfg = ctx.cfg;
    // At the default N=8 the recipe runs the built-in demo vector through all
    // three transform routes; larger N switches to the configured signal.
    const Vec signal = cfg.n == 8 && cfg.signal == "doppler" ? demo_coefficients() : load_signal(cfg);
    const int n = static_cast<int>(signal.size());
    const auto transform = build_wavelet_matrix(cfg.filter, n, cfg.levels);

    const Vec by_matrix = transform.matrix * signal;
    const auto by_mallat = mallat_forward(signal, cfg.filter, cfg.levels);
    const auto plan = givens_factorize(transform.matrix);
    const Vec by_givens = givens_apply(plan, signal);

    // Quantum route: lift the transform onto an amplitude-encoded state.
    const auto psi = amplitude_encode(signal);
    std::vector<int> all_targets(psi.qubits);
    for (int q = 0; q < psi.qubits; ++q) all_targets[q] = q;
    const auto psi_out = apply_unitary(psi, transform.matrix.cast<complex>(), all_targets);
    Vec by_state(n);
    for (int j = 0; j < n; ++j) by_state[j] = psi_out.amps[j].real() * psi.input_norm;

    CsvTable table;
    Vec idx(n);
    for (int j = 0; j < n; ++j) idx[j] = j;
    table.add_column("index", idx);
    table.add_column("signal", signal);
    table.add_column("coeff_matrix", by_matrix);
    table.add_column("coeff_mallat", by_mallat.values);
    table.add_column("coeff_givens", by_givens);
    table.add_column("coeff_state_route", by_state);
    ctx.csv("dwt_routes.csv", table);

    const auto summary = rotation_count_report(plan);
    ctx.report["orthogonality_residual"] = orthogonality_residual(transform.matrix);
    ctx.report["matrix_vs_mallat"] = (by_matrix - by_mallat.values).cwiseAbs().maxCoeff();
    ctx.report["matrix_vs_givens"] = (by_matrix - by_givens).cwiseAbs().maxCoeff();
    ctx.report["matrix_vs_state_route"] = (by_matrix - by_state).cwiseAbs().maxCoeff();
    ctx.report["rotation_count"] = summary.count;
    ctx.report["rotation_depth"] = summary.depth;
}

void recipe_fig5(RecipeContext& ctx) {
    const auto& cfg = ctx.cfg;
    const auto rescaled = rescale_to_unit(demo_coefficients());
    const Vec& d = rescaled.d;
    ShrinkagePolicy policy = cfg.policy;
    policy.scope = PolicyScope::All;  // the demo vector is a bare coefficient list

    Vec ideal(d.size());
    for (long i = 0; i < d.size(); ++i) ideal[i] = multiplier_of(policy, d[i]) * d[i];

    CsvTable table;
    Vec idx(d.size());
    for (long i = 0; i < d.size(); ++i) idx[i] = static_cast<double>(i);
    table.add_column("index", idx);
    table.add_column("original", d);
    table.add_column("ideal", ideal);
    if (cfg.shots) {
        const Vec measured =
            shrink_rescaled(d, policy, ShrinkMode::ExpectationDamping, cfg.shots, cfg.seed);
        table.add_column("measured", measured);
    }
    ctx.csv("shrunk_coefficients.csv", table);
    ctx.report["rescale_factor"] = rescaled.record.scale;
    ctx.report["lambda"] = policy.lambda;
}

void recipe_fig6(RecipeContext& ctx) {
    recipe_fig5(ctx);  // same per-coefficient table, smooth policy
    const auto& cfg = ctx.cfg;
    ShrinkagePolicy policy = cfg.policy;
    policy.scope = PolicyScope::All;

    const int grid_points = 17;
    Vec x(grid_points), ideal(grid_points), measured(grid_points), stderr_col(grid_points);
    const auto shots = shots_or(cfg, 1024);
    for (int k = 0; k < grid_points; ++k) {
        x[k] = -1.0 + 2.0 * k / (grid_points - 1);
        const double mu = multiplier_of(policy, x[k]) * x[k];
        ideal[k] = mu;
        const Vec one = shrink_rescaled(Vec::Constant(1, x[k]), policy,
                                        ShrinkMode::ExpectationDamping, shots,
                                        substream_seed(cfg.seed, "curve", k));
        measured[k] = one[0];
        stderr_col[k] = standard_error(mu, *shots);
    }
    CsvTable curve;
    curve.add_column("x", x);
    curve.add_column("ideal", ideal);
    curve.add_column("measured", measured);
    curve.add_column("standard_error", stderr_col);
    ctx.csv("shrink_curve.csv", curve);
}

void recipe_fig3(RecipeContext& ctx) {
    const auto& cfg = ctx.cfg;
    const Vec clean = load_signal(cfg);
    const Vec noisy = add_noise(clean, cfg.snr, cfg.seed);

    const auto quantum = denoise_quantum(noisy, cfg.filter, cfg.levels, cfg.policy, cfg.mode,
                                         cfg.shots, cfg.seed, &clean);

    // Classical soft baseline at its best lambda over a fixed grid.
    double best_lambda = 0.0, best_mse = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 26; ++k) {
        const double lambda = 0.01 * k;
        const auto est = denoise_classical(noisy, cfg.filter, cfg.levels, lambda, &clean);
        if (est.report.mse_estimate < best_mse) {
            best_mse = est.report.mse_estimate;
            best_lambda = lambda;
        }
    }
    const auto classical = denoise_classical(noisy, cfg.filter, cfg.levels, best_lambda, &clean);

    Vec idx(clean.size());
    for (long i = 0; i < clean.size(); ++i) idx[i] = static_cast<double>(i);

    CsvTable signals;
    signals.add_column("index", idx);
    signals.add_column("clean", clean);
    signals.add_column("noisy", noisy);
    signals.add_column("estimate_quantum", quantum.estimate);
    signals.add_column("estimate_classical", classical.estimate);
    ctx.csv("signals.csv", signals);

    CsvTable coeffs;
    coeffs.add_column("index", idx);
    coeffs.add_column("before", quantum.report.coeffs_before);
    coeffs.add_column("after", quantum.report.coeffs_after);
    coeffs.add_column("multiplier", quantum.report.multipliers);
    ctx.csv("coefficients.csv", coeffs);

    ctx.report["mse_noisy"] = quantum.report.mse_noisy;
    ctx.report["mse_quantum"] = quantum.report.mse_estimate;
    ctx.report["mse_classical_best"] = classical.report.mse_estimate;
    ctx.report["classical_best_lambda"] = best_lambda;
    ctx.report["snr_gain_db"] = quantum.report.snr_gain_db;
    ctx.report["rescale_factor"] = quantum.report.rescale_factor;
}

void recipe_fig4(RecipeContext& ctx) {
    const auto& cfg = ctx.cfg;
    const Vec clean = load_signal(cfg);
    const Vec noisy = add_noise(clean, cfg.snr, cfg.seed);
    const auto coeffs = mallat_forward(noisy, cfg.filter, cfg.levels);
    const auto rescaled = rescale_to_unit(coeffs.values);

    // Amplitude retention s_j = m_j^2 reproduces the policy multiplier on
    // each amplitude under the ancilla-0 branch.
    const long n = rescaled.d.size();
    Vec s(n);
    for (long j = 0; j < n; ++j) {
        const bool shrink = cfg.policy.scope == PolicyScope::All || coeffs.layout.is_detail_index(
                                                                        static_cast<int>(j));
        const double m = shrink ? multiplier_of(cfg.policy, rescaled.d[j]) : 1.0;
        s[j] = m * m;
    }
    const auto dilation =
        ancilla_dilation(RetentionVector::from_retentions(s), log2_exact(n, "register"));

    const auto psi = amplitude_encode(rescaled.d);
    StateVector joint;
    joint.qubits = psi.qubits + 1;
    joint.amps = CVec::Zero(2 * n);
    joint.amps.head(n) = psi.amps;
    std::vector<int> all_targets(joint.qubits);
    for (int q = 0; q < joint.qubits; ++q) all_targets[q] = q;
    const auto after = apply_unitary(joint, dilation.u, all_targets);

    Vec pre(n), post(n);
    for (long j = 0; j < n; ++j) {
        pre[j] = std::norm(psi.amps[j]);
        post[j] = std::norm(after.amps[j]);  // ancilla-0 block
    }
    CsvTable diag;
    diag.add_column("pre", pre);
    diag.add_column("post", post);
    ctx.csv("ancilla0_diagonal.csv", diag);
    ctx.report["transferred_probability"] = pre.sum() - post.sum();
}

void recipe_fig7(RecipeContext& ctx) {
    const auto& cfg = ctx.cfg;
    ShrinkagePolicy policy = cfg.policy;
    if (policy.kind != PolicyKind::PowerLaw) policy = ShrinkagePolicy::power_law(1.8);

    const Vec signal = load_signal(cfg);
    const auto rescaled = rescale_to_unit(signal);
    Vec mapped(rescaled.d.size());
    for (long i = 0; i < rescaled.d.size(); ++i) mapped[i] = classical_apply(policy, rescaled.d[i]);

    Vec idx(signal.size());
    for (long i = 0; i < signal.size(); ++i) idx[i] = static_cast<double>(i);
    CsvTable table;
    table.add_column("index", idx);
    table.add_column("original", rescaled.d);
    table.add_column("mapped", mapped);
    ctx.csv("signal_mapped.csv", table);

    const int grid = 201;
    Vec x(grid), fx(grid);
    for (int k = 0; k < grid; ++k) {
        x[k] = -1.0 + 2.0 * k / (grid - 1);
        fx[k] = classical_apply(policy, x[k]);
    }
    CsvTable curve;
    curve.add_column("x", x);
    curve.add_column("fx", fx);
    ctx.csv("rule_curve.csv", curve);
    ctx.report["exponent"] = policy.exponent;
}

void recipe_fig8(RecipeContext& ctx) {
    const auto& cfg = ctx.cfg;
    const auto rescaled = rescale_to_unit(demo_coefficients());
    const auto shots = shots_or(cfg, 1024);
    const double lambda = cfg.policy.lambda > 0.0 ? cfg.policy.lambda : 0.4;
    const auto result = ancilla_flag_experiment(rescaled.d, lambda, *shots, cfg.seed);

    Vec idx(rescaled.d.size());
    for (long i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
    CsvTable table;
    table.add_column("index", idx);
    table.add_column("d", rescaled.d);
    table.add_column("flag_probability", result.flag_probability);
    ctx.csv("flag_probabilities.csv", table);
    ctx.report["lambda"] = lambda;
    ctx.report["shots"] = *shots;
}

void recipe_fig9(RecipeContext& ctx) {
    const auto& cfg = ctx.cfg;
    const auto rescaled = rescale_to_unit(demo_coefficients());
    const auto shots = shots_or(cfg, 1024);
    const auto result = smooth_ancilla_experiment(rescaled.d, *shots, cfg.seed);

    Vec idx(rescaled.d.size());
    for (long i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
    CsvTable table;
    table.add_column("index", idx);
    table.add_column("d", rescaled.d);
    table.add_column("excitation", result.excitation);
    table.add_column("shrunk", result.shrunk);
    ctx.csv("smooth_ancilla.csv", table);
    ctx.report["shots"] = *shots;
}

void recipe_fig10(RecipeContext& ctx) {
    const auto rescaled = rescale_to_unit(demo_coefficients());
    const double alpha = 1.0;
    const auto psi = phase_encode(rescaled.d, alpha);
    write_state_csv(psi, (ctx.dir / "encoded_state.csv").string());
    ctx.artifacts.files.push_back((ctx.dir / "encoded_state.csv").string());

    const auto rho_in = to_density(psi);
    PauliString x_on_first("XII");
    const double m_before = expect(rho_in, x_on_first);

    const int grid = 11;
    Vec gammas(grid), before(grid), after(grid), ratio(grid);
    for (int k = 0; k < grid; ++k) {
        const double gamma = static_cast<double>(k) / (grid - 1);
        auto rho = rho_in;
        for (int q = 0; q < rho.qubits; ++q) rho = apply_channel(rho, phase_damping(gamma), {q});
        gammas[k] = gamma;
        before[k] = m_before;
        after[k] = expect(rho, x_on_first);
        ratio[k] = m_before != 0.0 ? after[k] / m_before : 0.0;
    }
    CsvTable table;
    table.add_column("gamma", gammas);
    table.add_column("m_before", before);
    table.add_column("m_after", after);
    table.add_column("shrink_factor", ratio);
    ctx.csv("phase_damping_observables.csv", table);
    ctx.report["alpha"] = alpha;
}

void recipe_hw_idle(RecipeContext& ctx) {
    const auto& cfg = ctx.cfg;
    const HardwareModel model = cfg.hardware.value_or(HardwareModel{100.0, 1024, cfg.seed});
    const int grid = 20;
    Vec s(grid), t(grid), gamma(grid), mult(grid);
    double max_residual = 0.0;
    for (int k = 0; k < grid; ++k) {
        s[k] = (k + 1) / static_cast<double>(grid);
        t[k] = idle_time_for_retention(s[k], model);
        gamma[k] = gamma_from_idle(t[k], model);
        mult[k] = std::sqrt(1.0 - gamma[k]);
        max_residual = std::max(max_residual, std::abs(gamma[k] - (1.0 - s[k] * s[k])));
    }
    CsvTable table;
    table.add_column("s", s);
    table.add_column("idle_time_us", t);
    table.add_column("gamma", gamma);
    table.add_column("x_multiplier", mult);
    ctx.csv("idle_calibration.csv", table);
    ctx.report["T2_us"] = model.t2_us;
    ctx.report["max_round_trip_residual"] = max_residual;
}

void recipe_hw_randz(RecipeContext& ctx) {
    const auto& cfg = ctx.cfg;
    const auto shots = shots_or(cfg, 100000);
    std::vector<double> g_col, x_col, expected_col, estimate_col, err_col;
    for (int gi = 0; gi < 5; ++gi) {
        const double gamma = gi / 4.0;
        for (int xi = 0; xi < 5; ++xi) {
            const double x = -1.0 + xi * 0.5;
            const auto psi = expectation_encode(x);
            const double est = randomized_z_shrink(
                psi, gamma, *shots, substream_seed(cfg.seed, "randz", gi * 5 + xi));
            g_col.push_back(gamma);
            x_col.push_back(x);
            expected_col.push_back((1.0 - 2.0 * gamma) * x);
            estimate_col.push_back(est);
            err_col.push_back(std::abs(est - expected_col.back()));
        }
    }
    CsvTable table;
    table.add_column("gamma", g_col);
    table.add_column("x", x_col);
    table.add_column("expected", expected_col);
    table.add_column("estimate", estimate_col);
    table.add_column("abs_error", err_col);
    ctx.csv("randomized_z.csv", table);
    ctx.report["shots"] = *shots;
}

}  // namespace

RunArtifacts run_experiment(const ExperimentConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    RecipeContext ctx(config);
    if (config.figure == "fig1_dwt") recipe_fig1(ctx);
    else if (config.figure == "fig5_hard") recipe_fig5(ctx);
    else if (config.figure == "fig6_smooth") recipe_fig6(ctx);
    else if (config.figure == "fig3_doppler") recipe_fig3(ctx);
    else if (config.figure == "fig4_diag") recipe_fig4(ctx);
    else if (config.figure == "fig7_power") recipe_fig7(ctx);
    else if (config.figure == "fig8_flag") recipe_fig8(ctx);
    else if (config.figure == "fig9_smooth_ancilla") recipe_fig9(ctx);
    else if (config.figure == "fig10_phase_encode") recipe_fig10(ctx);
    else if (config.figure == "hw_idle") recipe_hw_idle(ctx);
    else if (config.figure == "hw_randz") recipe_hw_randz(ctx);
    else throw ConfigError("unknown figure id: " + config.figure);
    ctx.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return std::move(ctx.artifacts);
}

// --- Verify suite ---------------------------------------------------------------

namespace {

DensityMatrix random_density(int qubits, std::mt19937_64& rng) {
    const long dim = 1L << qubits;
    std::normal_distribution<double> normal(0.0, 1.0);
    CMat a(dim, dim);
    for (long r = 0; r < dim; ++r) {
        for (long c = 0; c < dim; ++c) a(r, c) = complex(normal(rng), normal(rng));
    }
    CMat rho = a * a.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix{qubits, std::move(rho)};
}

Vec random_vec(long n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec v(n);
    for (long i = 0; i < n; ++i) v[i] = normal(rng);
    return v;
}

}  // namespace

std::vector<CheckResult> verify_suite(bool inject_fault) {
    std::vector<CheckResult> results;
    auto rng = make_rng(0x5eedULL, "verify");

    {  // orthogonality + route agreement + reconstruction
        double worst_ortho = 0.0, worst_route = 0.0, worst_recon = 0.0;
        for (const char* family : {"haar", "daub4"}) {
            const auto filter = WaveletFilter::named(family);
            for (int n : {8, 64, 256}) {
                for (int levels : {1, 2}) {
                    const auto w = build_wavelet_matrix(filter, n, levels);
                    worst_ortho = std::max(worst_ortho, orthogonality_residual(w.matrix));
                    const auto plan = givens_factorize(w.matrix);
                    const Mat replayed = givens_replay(plan, n);
                    for (int trial = 0; trial < 20; ++trial) {
                        const Vec x = random_vec(n, rng);
                        const Vec a = w.matrix * x;
                        const auto b = mallat_forward(x, filter, levels);
                        const Vec c = replayed * x;
                        worst_route = std::max(
                            {worst_route, (a - b.values).cwiseAbs().maxCoeff(),
                             (a - c).cwiseAbs().maxCoeff(), (b.values - c).cwiseAbs().maxCoeff()});
                        const Vec back = mallat_inverse(b, filter);
                        worst_recon = std::max(worst_recon, (back - x).cwiseAbs().maxCoeff());
                    }
                }
            }
        }
        results.push_back({"transform orthogonality ||WW^T - I||_F", worst_ortho < 1e-10,
                           worst_ortho, "haar/daub4, N in {8,64,256}, J in {1,2}"});
        results.push_back({"route agreement (matrix vs pyramid vs rotations)", worst_route < 1e-9,
                           worst_route, "20 random signals per combination"});
        results.push_back({"perfect reconstruction", worst_recon < 1e-10, worst_recon, ""});
    }

    {  // CPTP certificates
        double worst_complete = 0.0, worst_trace = 0.0, worst_eig = 0.0;
        for (int k = 0; k <= 20; ++k) {
            const double p = k / 20.0;
            for (auto channel :
                 {phase_damping(p), phase_flip(p), ancilla_shrink_channel(p), amplitude_damping(p)}) {
                if (inject_fault) channel.ops[0] *= 1.01;  // break completeness on purpose
                worst_complete = std::max(worst_complete, channel.completeness_residual());
                for (int trial = 0; trial < 20; ++trial) {
                    const auto rho = random_density(1, rng);
                    const auto out = apply_channel(rho, channel, {0});
                    worst_trace = std::max(worst_trace, out.trace_error());
                    worst_eig = std::min(worst_eig, out.min_eigenvalue());
                }
            }
        }
        results.push_back({"kraus completeness ||sum K^dag K - I||_F", worst_complete < 1e-12,
                           worst_complete,
                           inject_fault ? "fault injected into one Kraus operator" : ""});
        results.push_back({"channel output trace preservation", worst_trace < 1e-12, worst_trace, ""});
        results.push_back({"channel output positivity (min eigenvalue)", worst_eig >= -1e-10,
                           worst_eig, ""});
    }

    {  // dilation equivalence
        double worst = 0.0;
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int sys = 1; sys <= 2; ++sys) {
            for (int trial = 0; trial < 5; ++trial) {
                Vec s(1L << sys);
                for (long j = 0; j < s.size(); ++j) s[j] = unit(rng);
                const auto dilation = ancilla_dilation(RetentionVector::from_retentions(s), sys);
                const auto channel = kraus_from_dilation(dilation);
                const auto rho = random_density(sys, rng);
                std::vector<int> targets(sys);
                for (int q = 0; q < sys; ++q) targets[q] = q;
                const auto via_trace = dilate_apply_trace(rho, dilation);
                const auto via_kraus = apply_channel(rho, channel, targets);
                worst = std::max(worst, (via_trace.rho - via_kraus.rho).cwiseAbs().maxCoeff());
            }
        }
        results.push_back({"dilation vs kraus-sum equivalence", worst < 1e-10, worst,
                           "1-2 system qubits, random retentions"});
    }

    {  // Bloch attenuation laws
        double worst = 0.0;
        for (int k = 0; k <= 20; ++k) {
            const double p = k / 20.0;
            for (int trial = 0; trial < 5; ++trial) {
                const auto rho = random_density(1, rng);
                const auto b0 = bloch(rho);
                const auto bd = bloch(apply_channel(rho, phase_damping(p), {0}));
                worst = std::max({worst, std::abs(bd.x - std::sqrt(1.0 - p) * b0.x),
                                  std::abs(bd.y - std::sqrt(1.0 - p) * b0.y),
                                  std::abs(bd.z - b0.z)});
                const auto bf = bloch(apply_channel(rho, phase_flip(p), {0}));
                worst = std::max(worst, std::abs(bf.x - (1.0 - 2.0 * p) * b0.x));
                const auto ba = bloch(apply_channel(rho, ancilla_shrink_channel(p), {0}));
                worst = std::max({worst, std::abs(ba.x - (2.0 * p - 1.0) * b0.x),
                                  std::abs(ba.z - b0.z)});
            }
        }
        results.push_back({"bloch attenuation laws", worst < 1e-12, worst,
                           "sqrt(1-g), 1-2g, 2s-1 at 21 grid points"});
    }

    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.passed; });
}

}  // namespace qws
