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

#ifndef QETSIM_CLI_COMMANDS_HPP
#define QETSIM_CLI_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qet/noise.hpp"
#include "qet/sweep.hpp"
#include "qet/verify.hpp"
#include "qetsim_cli/toml.hpp"

namespace qet::cli {

enum ExitCode : int { kExitOk = 0, kExitInvariant = 1, kExitUsage = 2 };

/// Command-line flags; every set field overrides the config file.
struct CliOptions {
    std::optional<std::string> config_path;
    std::optional<std::string> out_path;
    std::optional<std::string> svg_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> budget;
    std::optional<double> epsilon;
    std::optional<std::string> mode;
};

struct TimingConfig {
    double j_ab = 1.16;  // Hz
    double j_ana = 72.27;
    double j_ban = 69.68;
    double t_pulse = 9.5e-3;  // s
    double margin = 10.0;
    /// Measured durations of the feedback gates (U_AnA, U_BAn), seconds.
    std::vector<double> gate_durations{10e-3, 4e-3};
};

struct RunConfig {
    SweepConfig sweep;
    /// kappa / h_A of the single-point commands.
    double kappa_over_h = 0.2;
    PerturbationSpec perturb{{-0.3, -0.25, -0.2, -0.15, -0.1, -0.05, 0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3}};
    /// Gate-duration multipliers of the noise command, ascending.
    std::vector<double> noise_scalings{1.0, 2.0, 5.0, 10.0};
    std::size_t slp_budget = 5000;
    std::uint64_t seed = 1;
    TimingConfig timing;
    VerifyOptions verify;

    ModelParams point() const { return sweep.params_at(kappa_over_h); }
    /// Throws std::invalid_argument or ConfigError on any inconsistent field.
    void validate() const;
};

/// Reads every recognised key; unknown keys are rejected.
RunConfig config_from_toml(const TomlDocument& doc);
void apply_overrides(RunConfig& cfg, const CliOptions& opts);
/// Defaults, then the config file, then flags.
RunConfig load_run_config(const CliOptions& opts);

// Each command writes results to `out` (or to --out when it emits CSV) and
// diagnostics to `err`, and returns an ExitCode.
int cmd_sweep(const RunConfig& cfg, const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_equivalence(const RunConfig& cfg, const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_slp(const RunConfig& cfg, const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_noise(const RunConfig& cfg, const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_perturb(const RunConfig& cfg, const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_timing(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and dispatches.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qet::cli

#endif  // QETSIM_CLI_COMMANDS_HPP
