// Copyright 2026 The qetsim Authors
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

#include "qetsim_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qet/passivity.hpp"
#include "qet/protocols.hpp"

namespace qet::cli {

namespace {

// Extraction floor that separates a real gain from rounding.
constexpr double kPositiveFloor = 1e-12;

std::size_t as_count(double v, const std::string& key) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) {
        throw ConfigError("config key '" + key + "' must be a nonnegative integer");
    }
    return static_cast<std::size_t>(v);
}

void read_number(const TomlDocument& doc, const std::string& key, double& into) {
    if (auto v = doc.number(key)) into = *v;
}

template <typename Int>
void read_count(const TomlDocument& doc, const std::string& key, Int& into) {
    if (auto v = doc.number(key)) into = static_cast<Int>(as_count(*v, key));
}

void read_relaxation(const TomlDocument& doc, const std::string& prefix, QubitRelaxation& into) {
    read_number(doc, prefix + ".t1", into.t1);
    read_number(doc, prefix + ".t2", into.t2);
}

NoisePlacement parse_placement(const std::string& name) {
    if (name == "per-gate") return NoisePlacement::PerGate;
    if (name == "per-step") return NoisePlacement::PerStep;
    throw ConfigError("noise.placement must be \"per-gate\" or \"per-step\"");
}

// Writes CSV through `writer` to --out, or to `out` when no path is given.
// Returns false after reporting an unwritable path.
bool emit_csv(const CliOptions& opts, std::ostream& out, std::ostream& err,
              const std::function<void(std::ostream&)>& writer) {
    if (!opts.out_path) {
        writer(out);
        return true;
    }
    std::ofstream f(*opts.out_path, std::ios::binary);
    if (f) writer(f);
    if (!f) {
        err << "error: cannot write '" << *opts.out_path << "'\n";
        return false;
    }
    return true;
}

void csv_header(std::ostream& os, std::initializer_list<const char*> columns) {
    os << "# schema=" << kCsvSchemaVersion << "\n";
    bool first = true;
    for (const char* c : columns) {
        os << (first ? "" : ",") << c;
        first = false;
    }
    os << "\n";
}

std::vector<double> kappa_values(const RunConfig& cfg) {
    auto grid = cfg.sweep.kappa_over_h.values();
    for (auto& k : grid) k *= cfg.sweep.h_a;
    return grid;
}

}  // namespace

void RunConfig::validate() const {
    sweep.validate();
    point().validate();
    perturb.validate();
    if (noise_scalings.empty() || !std::is_sorted(noise_scalings.begin(), noise_scalings.end()) ||
        !(noise_scalings.front() > 0.0)) {
        throw ConfigError("noise.scalings must be positive and ascending");
    }
    if (slp_budget < 1) throw ConfigError("slp budget must be at least 1");
    if (!(timing.j_ab > 0.0) || !(timing.j_ana > 0.0) || !(timing.j_ban > 0.0) || !(timing.t_pulse > 0.0) ||
        !(timing.margin > 0.0)) {
        throw ConfigError("timing couplings, pulse time and margin must be positive");
    }
    for (double d : timing.gate_durations) {
        if (!(d > 0.0)) throw ConfigError("timing.gate_durations must be positive");
    }
}

RunConfig config_from_toml(const TomlDocument& doc) {
    RunConfig cfg;
    auto& s = cfg.sweep;
    read_number(doc, "model.h_a", s.h_a);
    read_number(doc, "model.h_b_ratio", s.h_b_ratio);
    read_number(doc, "model.kappa_over_h", cfg.kappa_over_h);

    read_number(doc, "grid.start", s.kappa_over_h.start);
    read_number(doc, "grid.stop", s.kappa_over_h.stop);
    read_count(doc, "grid.steps", s.kappa_over_h.steps);

    if (auto m = doc.string("sweep.mode")) s.mode = parse_sweep_mode(*m);

    auto& n = s.noise;
    if (doc.contains("noise.t1") || doc.contains("noise.t2")) {
        QubitRelaxation all;
        read_relaxation(doc, "noise", all);
        n.a = n.b = n.an = all;
    }
    read_relaxation(doc, "noise.a", n.a);
    read_relaxation(doc, "noise.b", n.b);
    read_relaxation(doc, "noise.an", n.an);
    read_number(doc, "noise.dt", n.dt);
    read_number(doc, "noise.durations.prep", n.durations.prep);
    read_number(doc, "noise.durations.ana", n.durations.ana);
    read_number(doc, "noise.durations.ban", n.durations.ban);
    if (auto p = doc.string("noise.placement")) n.placement = parse_placement(*p);
    if (auto v = doc.number_array("noise.scalings")) cfg.noise_scalings = *v;

    if (auto v = doc.number_array("perturb.epsilons")) cfg.perturb.epsilons = *v;
    if (auto v = doc.boolean("perturb.a")) cfg.perturb.perturb_a = *v;
    if (auto v = doc.boolean("perturb.b")) cfg.perturb.perturb_b = *v;
    read_number(doc, "perturb.epsilon", s.epsilon);

    read_count(doc, "slp.budget", cfg.slp_budget);
    read_count(doc, "slp.seed", cfg.seed);

    auto& t = cfg.timing;
    read_number(doc, "timing.j_ab", t.j_ab);
    read_number(doc, "timing.j_ana", t.j_ana);
    read_number(doc, "timing.j_ban", t.j_ban);
    read_number(doc, "timing.t_pulse", t.t_pulse);
    read_number(doc, "timing.margin", t.margin);
    if (auto v = doc.number_array("timing.gate_durations")) t.gate_durations = *v;

    auto& v = cfg.verify;
    read_count(doc, "verify.seed", v.seed);
    read_count(doc, "verify.random_draws", v.random_draws);
    read_count(doc, "verify.slp_budget", v.slp_budget);
    read_count(doc, "verify.slp_draws", v.slp_draws);
    read_count(doc, "verify.no_feedback_samples", v.no_feedback_samples);

    if (const auto unknown = doc.unused_keys(); !unknown.empty()) {
        throw ConfigError("unknown config key '" + unknown.front() + "'");
    }
    return cfg;
}

void apply_overrides(RunConfig& cfg, const CliOptions& opts) {
    if (opts.mode) cfg.sweep.mode = parse_sweep_mode(*opts.mode);
    if (opts.seed) {
        cfg.seed = *opts.seed;
        cfg.verify.seed = *opts.seed;
    }
    if (opts.budget) cfg.slp_budget = *opts.budget;
    if (opts.epsilon) {
        cfg.sweep.epsilon = *opts.epsilon;
        cfg.perturb.epsilons = {*opts.epsilon};
    }
}

RunConfig load_run_config(const CliOptions& opts) {
    RunConfig cfg = opts.config_path ? config_from_toml(TomlDocument::load(*opts.config_path)) : RunConfig{};
    apply_overrides(cfg, opts);
    cfg.validate();
    return cfg;
}

int cmd_sweep(const RunConfig& cfg, const CliOptions& opts, std::ostream& out, std::ostream& err) {
    const auto rows = run_sweep(cfg.sweep);
    if (!emit_csv(opts, out, err, [&](std::ostream& os) { write_sweep_csv(os, rows); })) return kExitUsage;

    if (opts.svg_path) {
        std::ofstream f(*opts.svg_path, std::ios::binary);
        if (f) f << sweep_svg(rows, "QET sweep (" + to_string(cfg.sweep.mode) + ")");
        if (!f) err << "warning: cannot write '" << *opts.svg_path << "'; CSV unaffected\n";
    }

    int status = kExitOk;
    for (std::size_t i : inconsistent_rows(rows, cfg.sweep.mode)) {
        err << "invariant failed: energy bookkeeping at kappa_over_h=" << format_value(rows[i].kappa_over_h) << "\n";
        status = kExitInvariant;
    }
    for (const auto& r : rows) {
        const auto where = " at kappa_over_h=" + format_value(r.kappa_over_h) + "\n";
        switch (cfg.sweep.mode) {
            case SweepMode::Ideal:
                if (std::abs(r.energy_extracted - r.max_extractable) > 1e-8) {
                    err << "invariant failed: extraction below the bound" << where;
                    status = kExitInvariant;
                }
                break;
            case SweepMode::Noisy:
                if (r.energy_extracted > r.max_extractable + 1e-9) {
                    err << "invariant failed: noisy extraction above ideal" << where;
                    status = kExitInvariant;
                }
                break;
            case SweepMode::Perturbed:
                if (std::abs(cfg.sweep.epsilon) <= 0.3 && r.kappa_over_h > 0.0 && !(r.energy_extracted > 0.0)) {
                    err << "invariant failed: perturbed extraction not positive" << where;
                    status = kExitInvariant;
                }
                break;
        }
        if (r.injected_energy < r.energy_extracted - 1e-12) {
            err << "invariant failed: extraction exceeds injected energy" << where;
            status = kExitInvariant;
        }
    }
    return status;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto results = run_verification(cfg.verify);
    std::vector<std::string> failed;
    for (const auto& r : results) {
        out << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        if (!r.pass) failed.push_back(r.name);
    }
    if (failed.empty()) return kExitOk;
    err << "verification failed:";
    for (const auto& name : failed) err << " " << name;
    err << "\n";
    return kExitInvariant;
}

int cmd_equivalence(const RunConfig& cfg, const CliOptions& opts, std::ostream& out, std::ostream& err) {
    const auto p = cfg.point();
    const auto point = equivalence_report(p);
    out << "h_a=" << format_value(p.h_a) << " h_b=" << format_value(p.h_b) << " kappa=" << format_value(p.kappa)
        << "\nmax_diff=" << format_value(point.max_diff)
        << "\nproportionality=" << format_value(std::abs(point.proportionality[0])) << ","
        << format_value(std::abs(point.proportionality[1]))
        << "\nproportionality_residual=" << format_value(point.proportionality_residual) << "\n";

    const auto grid = cfg.sweep.kappa_over_h.values();
    std::vector<EquivalenceReport> reports;
    reports.reserve(grid.size());
    for (double k : grid) reports.push_back(equivalence_report(cfg.sweep.params_at(k)));

    if (opts.out_path) {
        const bool ok = emit_csv(opts, out, err, [&](std::ostream& os) {
            csv_header(os, {"kappa_over_h", "max_diff", "abs_c_plus", "abs_c_minus", "proportionality_residual"});
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const auto& r = reports[i];
                os << format_value(grid[i]) << "," << format_value(r.max_diff) << ","
                   << format_value(std::abs(r.proportionality[0])) << ","
                   << format_value(std::abs(r.proportionality[1])) << ","
                   << format_value(r.proportionality_residual) << "\n";
            }
        });
        if (!ok) return kExitUsage;
    }

    int status = kExitOk;
    if (!(point.max_diff <= 1e-9)) {
        err << "invariant failed: equivalence diff " << format_value(point.max_diff) << " exceeds 1e-9\n";
        status = kExitInvariant;
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(reports[i].max_diff <= 1e-8)) {
            err << "invariant failed: equivalence diff exceeds 1e-8 at kappa_over_h=" << format_value(grid[i]) << "\n";
            status = kExitInvariant;
        }
    }
    return status;
}

int cmd_slp(const RunConfig& cfg, const CliOptions& opts, std::ostream& out, std::ostream& err) {
    const auto p = cfg.point();
    const auto report = slp_probe(p, ComplexMatrix::projector(ground_state(p)), cfg.slp_budget, cfg.seed);
    const double bound = max_extractable_energy(p);
    out << "h_a=" << format_value(p.h_a) << " h_b=" << format_value(p.h_b) << " kappa=" << format_value(p.kappa)
        << "\nbudget=" << cfg.slp_budget << " seed=" << cfg.seed << "\nevaluations=" << report.evaluations
        << "\nbest_extraction=" << format_value(report.best_extraction)
        << "\nbest_kraus_rank=" << report.best_channel.kraus_rank
        << "\ncertified_slp=" << (report.certified_slp ? "true" : "false")
        << "\nactivation_gap=" << format_value(bound - report.best_extraction) << "\n";

    if (opts.out_path) {
        const bool ok = emit_csv(opts, out, err, [&](std::ostream& os) {
            csv_header(os, {"h_a", "h_b", "kappa", "budget", "seed", "evaluations", "best_extraction",
                            "certified_slp", "activation_gap"});
            os << format_value(p.h_a) << "," << format_value(p.h_b) << "," << format_value(p.kappa) << ","
               << cfg.slp_budget << "," << cfg.seed << "," << report.evaluations << ","
               << format_value(report.best_extraction) << "," << (report.certified_slp ? 1 : 0) << ","
               << format_value(bound - report.best_extraction) << "\n";
        });
        if (!ok) return kExitUsage;
    }
    if (!report.certified_slp) {
        err << "invariant failed: local channel extracts " << format_value(report.best_extraction)
            << " from the ground state\n";
        return kExitInvariant;
    }
    return kExitOk;
}

int cmd_noise(const RunConfig& cfg, const CliOptions& opts, std::ostream& out, std::ostream& err) {
    cfg.sweep.noise.validate();
    const auto grid = cfg.sweep.kappa_over_h.values();
    std::vector<std::vector<double>> noisy(grid.size());
    std::vector<double> ideal(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto p = cfg.sweep.params_at(grid[i]);
        ideal[i] = run_unitary_qet(p).energy_extracted;
        for (double factor : cfg.noise_scalings) {
            noisy[i].push_back(noisy_unitary_qet(p, cfg.sweep.noise.with_scaled_durations(factor)).energy_extracted);
        }
    }

    const bool ok = emit_csv(opts, out, err, [&](std::ostream& os) {
        os << "# schema=" << kCsvSchemaVersion << "\n";
        os << "kappa_over_h,ideal";
        for (double factor : cfg.noise_scalings) os << ",noisy_x" << format_value(factor);
        os << "\n";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            os << format_value(grid[i]) << "," << format_value(ideal[i]);
            for (double v : noisy[i]) os << "," << format_value(v);
            os << "\n";
        }
    });
    if (!ok) return kExitUsage;

    int status = kExitOk;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto where = " at kappa_over_h=" + format_value(grid[i]) + "\n";
        if (noisy[i].front() > ideal[i] + 1e-9) {
            err << "invariant failed: noisy extraction above ideal" << where;
            status = kExitInvariant;
        }
        for (std::size_t j = 1; j < noisy[i].size(); ++j) {
            if (noisy[i][j] > noisy[i][j - 1] + 1e-12) {
                err << "invariant failed: extraction grows with gate duration" << where;
                status = kExitInvariant;
            }
        }
    }
    return status;
}

int cmd_perturb(const RunConfig& cfg, const CliOptions& opts, std::ostream& out, std::ostream& err) {
    const auto kappas = kappa_values(cfg);
    const auto rows = perturbation_sweep(cfg.sweep.params_at(0.0), cfg.perturb, kappas);

    const bool ok = emit_csv(opts, out, err, [&](std::ostream& os) {
        csv_header(os, {"epsilon", "kappa_over_h", "extraction", "ideal", "relative_deviation"});
        for (const auto& r : rows) {
            os << format_value(r.epsilon) << "," << format_value(r.kappa / cfg.sweep.h_a) << ","
               << format_value(r.extraction) << "," << format_value(r.ideal) << ","
               << format_value(r.relative_deviation) << "\n";
        }
    });
    if (!ok) return kExitUsage;

    int status = kExitOk;
    for (const auto& r : rows) {
        if (std::abs(r.epsilon) <= 0.3 + 1e-12 && r.kappa > 0.0 && !(r.extraction > kPositiveFloor)) {
            err << "invariant failed: extraction " << format_value(r.extraction) << " at epsilon="
                << format_value(r.epsilon) << " kappa=" << format_value(r.kappa) << "\n";
            status = kExitInvariant;
        }
    }
    return status;
}

int cmd_timing(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto& t = cfg.timing;
    const auto couplings = timing_check(t.j_ab, t.j_ana, t.j_ban, t.t_pulse, t.margin);
    const auto gates = timing_check_durations(t.j_ab, t.gate_durations, t.margin);
    auto line = [&](const char* name, const TimingReport& r) {
        out << name << ": t_total=" << format_value(r.t_total * 1e3) << " ms, t_c=" << format_value(r.t_c * 1e3)
            << " ms, margin=x" << format_value(r.margin) << ", " << (r.pass ? "pass" : "fail") << "\n";
    };
    line("couplings", couplings);
    line("gate durations", gates);
    if (couplings.pass && gates.pass) return kExitOk;
    err << "invariant failed: protocol is not faster than energy propagation by x" << format_value(t.margin) << "\n";
    return kExitInvariant;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum energy teleportation simulator", "qetsim"};
    app.require_subcommand(1, 1);

    CliOptions opts;
    std::string config, out_path, svg, mode;
    std::uint64_t seed = 0;
    std::size_t budget = 0;
    double epsilon = 0.0;
    auto* o_config = app.add_option("--config", config, "TOML config file");
    auto* o_out = app.add_option("--out", out_path, "CSV output path (default stdout)");
    auto* o_svg = app.add_option("--svg", svg, "SVG plot output path (sweep)");
    auto* o_seed = app.add_option("--seed", seed, "RNG seed");
    auto* o_budget = app.add_option("--budget", budget, "objective evaluations for the SLP probe");
    auto* o_eps = app.add_option("--epsilon", epsilon, "relative perturbation of the local fields");
    auto* o_mode = app.add_option("--mode", mode, "sweep mode: ideal, noisy or perturbed");

    const std::vector<std::pair<const char*, const char*>> commands{
        {"sweep", "extraction and observables across the kappa grid"},
        {"verify", "run every invariant suite"},
        {"equivalence", "minimal versus fully unitary protocol"},
        {"slp", "search local channels for extractable energy"},
        {"noise", "extraction under independent qubit relaxation"},
        {"perturb", "extraction under perturbed local fields"},
        {"timing", "protocol duration against the coupling time scale"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*o_config) opts.config_path = config;
    if (*o_out) opts.out_path = out_path;
    if (*o_svg) opts.svg_path = svg;
    if (*o_seed) opts.seed = seed;
    if (*o_budget) opts.budget = budget;
    if (*o_eps) opts.epsilon = epsilon;
    if (*o_mode) opts.mode = mode;
    const std::string command = app.get_subcommands().front()->get_name();

    if (opts.svg_path && command != "sweep") {
        err << "error: --svg applies to sweep only\n";
        return kExitUsage;
    }

    RunConfig cfg;
    try {
        cfg = load_run_config(opts);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (command == "sweep") return cmd_sweep(cfg, opts, out, err);
        if (command == "verify") return cmd_verify(cfg, out, err);
        if (command == "equivalence") return cmd_equivalence(cfg, opts, out, err);
        if (command == "slp") return cmd_slp(cfg, opts, out, err);
        if (command == "noise") return cmd_noise(cfg, opts, out, err);
        if (command == "perturb") return cmd_perturb(cfg, opts, out, err);
        return cmd_timing(cfg, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "invariant failed: " << e.what() << "\n";
        return kExitInvariant;
    }
}

}  // namespace qet::cli
