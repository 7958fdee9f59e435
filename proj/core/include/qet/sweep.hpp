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

#ifndef QET_SWEEP_HPP
#define QET_SWEEP_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "qet/hamiltonian.hpp"
#include "qet/noise.hpp"

namespace qet {

enum class SweepMode { Ideal, Noisy, Perturbed };

std::string to_string(SweepMode mode);
/// Accepts "ideal", "noisy" or "perturbed"; throws std::invalid_argument otherwise.
SweepMode parse_sweep_mode(const std::string& name);

/// Evenly spaced kappa / h values, endpoints included.
struct KappaGrid {
    double start = 0.0;
    double stop = 1.0;
    std::size_t steps = 51;

    std::vector<double> values() const;
};

struct SweepConfig {
    double h_a = 1.0;
    /// h_B = h_b_ratio * h_A
    double h_b_ratio = 0.4;
    KappaGrid kappa_over_h;
    SweepMode mode = SweepMode::Ideal;
    NoiseParams noise;
    double epsilon = 0.0;

    void validate() const;
    ModelParams params_at(double kappa_over_h) const;
};

struct SweepRow {
    double kappa_over_h = 0.0;
    double neg_exp_xaxb = 0.0;
    double exp_zb = 0.0;
    double energy_extracted = 0.0;
    double injected_energy = 0.0;
    double lambda_min = 0.0;
    double max_extractable = 0.0;
    /// Tr[(H_B + V) rho_f]; cancels energy_extracted in ideal and noisy modes.
    double b_side_energy = 0.0;
};

/// One row per grid point, in grid order. Rows are computed concurrently.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

/// Rows whose energy_extracted + b_side_energy exceeds `tol` in magnitude
/// (always empty in perturbed mode, where extraction is a difference).
std::vector<std::size_t> inconsistent_rows(const std::vector<SweepRow>& rows, SweepMode mode, double tol = 1e-9);

inline constexpr int kCsvSchemaVersion = 1;

/// "# schema=1" line, header, then one line per row with 12 significant digits.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
/// Self-contained SVG polyline chart of extraction and expectation values against kappa / h.
std::string sweep_svg(const std::vector<SweepRow>& rows, const std::string& title = "");

/// %.12g with negative zero folded to zero.
std::string format_value(double v);

}  // namespace qet

#endif  // QET_SWEEP_HPP
