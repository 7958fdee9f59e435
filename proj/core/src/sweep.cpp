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

#include "qet/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qet/protocols.hpp"

namespace qet {

std::string to_string(SweepMode mode) {
    switch (mode) {
        case SweepMode::Ideal:
            return "ideal";
        case SweepMode::Noisy:
            return "noisy";
        case SweepMode::Perturbed:
            return "perturbed";
    }
    return "?";
}

SweepMode parse_sweep_mode(const std::string& name) {
    if (name == "ideal") return SweepMode::Ideal;
    if (name == "noisy") return SweepMode::Noisy;
    if (name == "perturbed") return SweepMode::Perturbed;
    throw std::invalid_argument("unknown mode '" + name + "' (expected ideal, noisy or perturbed)");
}

std::vector<double> KappaGrid::values() const {
    std::vector<double> out(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        out[i] = steps == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    if (steps > 1) out.back() = stop;
    return out;
}

void SweepConfig::validate() const {
    if (kappa_over_h.steps < 2) throw std::invalid_argument("kappa grid needs at least 2 points");
    if (!std::isfinite(kappa_over_h.start) || !std::isfinite(kappa_over_h.stop) || kappa_over_h.start < 0.0 ||
        kappa_over_h.stop < kappa_over_h.start) {
        throw std::invalid_argument("kappa grid must satisfy 0 <= start <= stop");
    }
    if (!(h_a > 0.0) || !(h_b_ratio > 0.0)) throw std::invalid_argument("h_a and h_b_ratio must be positive");
    if (mode == SweepMode::Noisy) noise.validate();
    if (mode == SweepMode::Perturbed && !(epsilon > -1.0)) throw std::invalid_argument("epsilon must exceed -1");
}

ModelParams SweepConfig::params_at(double k_over_h) const { return {h_a, h_b_ratio * h_a, k_over_h * h_a}; }

namespace {

SweepRow compute_row(const SweepConfig& cfg, double k_over_h) {
    const auto p = cfg.params_at(k_over_h);
    const auto hs = build_hamiltonian(p);
    ProtocolResult r;
    double b_side = 0.0;
    switch (cfg.mode) {
        case SweepMode::Ideal:
            r = run_unitary_qet(p);
            b_side = expectation(r.rho_ab, hs.b_side());
            break;
        case SweepMode::Noisy:
            r = noisy_unitary_qet(p, cfg.noise);
            b_side = expectation(r.rho_ab, hs.b_side());
            break;
        case SweepMode::Perturbed: {
            const LocalFieldScaling scaling{cfg.epsilon, cfg.epsilon};
            r = run_unitary_qet(p);
            r.energy_extracted = perturbed_extraction(p, scaling);
            b_side = expectation(r.rho_ab, build_hamiltonian(p, scaling).b_side());
            break;
        }
    }
    SweepRow row;
    row.kappa_over_h = k_over_h;
    row.neg_exp_xaxb = -r.exp_xaxb;
    row.exp_zb = r.exp_zb;
    row.energy_extracted = r.energy_extracted;
    row.injected_energy = r.injected_energy;
    row.lambda_min = hs.lambda_min;
    row.max_extractable = max_extractable_energy(p);
    row.b_side_energy = b_side;
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const auto grid = cfg.kappa_over_h.values();
    const std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
    std::vector<SweepRow> rows(grid.size());
    for (std::size_t begin = 0; begin < grid.size(); begin += workers) {
        const std::size_t end = std::min(grid.size(), begin + workers);
        std::vector<std::future<SweepRow>> batch;
        for (std::size_t i = begin; i < end; ++i) batch.push_back(std::async(std::launch::async, compute_row, cfg, grid[i]));
        for (std::size_t i = begin; i < end; ++i) rows[i] = batch[i - begin].get();
    }
    return rows;
}

std::vector<std::size_t> inconsistent_rows(const std::vector<SweepRow>& rows, SweepMode mode, double tol) {
    std::vector<std::size_t> bad;
    if (mode == SweepMode::Perturbed) return bad;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (std::abs(rows[i].energy_extracted + rows[i].b_side_energy) > tol) bad.push_back(i);
    }
    return bad;
}

std::string format_value(double v) {
    if (v == 0.0) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "# schema=" << kCsvSchemaVersion << "\n";
    os << "kappa_over_h,neg_exp_XAXB,exp_ZB,energy_extracted,E_A_injected,lambda_min,max_extractable\n";
    for (const auto& r : rows) {
        os << format_value(r.kappa_over_h) << ',' << format_value(r.neg_exp_xaxb) << ',' << format_value(r.exp_zb) << ','
           << format_value(r.energy_extracted) << ',' << format_value(r.injected_energy) << ','
           << format_value(r.lambda_min) << ',' << format_value(r.max_extractable) << '\n';
    }
}

std::string sweep_svg(const std::vector<SweepRow>& rows, const std::string& title) {
    constexpr double kWidth = 720, kHeight = 440, kLeft = 70, kRight = 170, kTop = 40, kBottom = 50;
    struct Series {
        const char* label;
        const char* color;
        double SweepRow::*field;
    };
    const Series series[] = {
        {"-dE_B (extracted)", "#d62728", &SweepRow::energy_extracted},
        {"max extractable", "#7f7f7f", &SweepRow::max_extractable},
        {"-<X_A X_B>", "#1f77b4", &SweepRow::neg_exp_xaxb},
        {"<Z_B>", "#2ca02c", &SweepRow::exp_zb},
    };

    double x_min = rows.empty() ? 0.0 : rows.front().kappa_over_h;
    double x_max = rows.empty() ? 1.0 : rows.back().kappa_over_h;
    if (x_max <= x_min) x_max = x_min + 1.0;
    double y_min = 0.0, y_max = 1.0;
    for (const auto& r : rows) {
        for (const auto& s : series) {
            y_min = std::min(y_min, r.*(s.field));
            y_max = std::max(y_max, r.*(s.field));
        }
    }
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) os << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"16\">" << title << "</text>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << sy(0.0) << "\" x2=\"" << kLeft + plot_w << "\" y2=\"" << sy(0.0)
       << "\" stroke=\"#ccc\"/>\n";
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 4.0;
        const double yv = y_min + (y_max - y_min) * i / 4.0;
        os << "<text x=\"" << sx(xv) << "\" y=\"" << kTop + plot_h + 18 << "\" font-size=\"11\" text-anchor=\"middle\">"
           << format_value(std::round(xv * 1000) / 1000) << "</text>\n";
        os << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy(yv) + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
           << format_value(std::round(yv * 1000) / 1000) << "</text>\n";
    }
    os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
       << "\" font-size=\"13\" text-anchor=\"middle\">kappa / h</text>\n";
    int legend_row = 0;
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
        for (const auto& r : rows) os << sx(r.kappa_over_h) << ',' << sy(r.*(s.field)) << ' ';
        os << "\"/>\n";
        const double ly = kTop + 16 + 20 * legend_row++;
        os << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 36 << "\" y2=\""
           << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << kWidth - kRight + 42 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">" << s.label
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace qet
