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

#ifndef QET_NOISE_HPP
#define QET_NOISE_HPP

#include <span>
#include <vector>

#include "qet/hamiltonian.hpp"
#include "qet/operator.hpp"
#include "qet/protocols.hpp"

namespace qet {

/// Relaxation times of one qubit, in seconds.
///
/// The defaults are placeholders, not measured values. Supply real T1/T2
/// through the config for quantitative work.
struct QubitRelaxation {
    double t1 = 10.0;
    double t2 = 1.0;
};

enum class NoisePlacement {
    PerGate,  // one relaxation step of the full gate duration after each gate
    PerStep,  // gate split into dt slices, each followed by relaxation for dt
};

/// Gate durations in seconds: An-mediated preparation, U_AnA, U_BAn.
struct GateDurations {
    double prep = 26e-3;
    double ana = 10e-3;
    double ban = 4e-3;
};

struct NoiseParams {
    QubitRelaxation b;
    QubitRelaxation an;
    QubitRelaxation a;
    double dt = 2e-6;
    GateDurations durations;
    NoisePlacement placement = NoisePlacement::PerGate;

    /// Same (T1, T2) on every qubit.
    static NoiseParams uniform(double t1, double t2);

    const QubitRelaxation& relaxation(QubitLabel q) const;
    /// Copy with every gate duration multiplied by `factor`.
    NoiseParams with_scaled_durations(double factor) const;
    /// Throws std::invalid_argument unless 0 < T2 <= 2 T1 on every qubit, dt > 0
    /// and every gate lasts at least dt.
    void validate() const;
};

/// Amplitude damping (p = 1 - exp(-t/T1)) followed by pure dephasing at rate
/// 1/T2 - 1/(2 T1); four 2x2 Kraus operators.
std::vector<ComplexMatrix> relaxation_kraus(double t, const QubitRelaxation& relax);
std::vector<ComplexMatrix> relaxation_channel(QubitLabel q, double t, const NoiseParams& np);

/// Applies a single-qubit channel to `target` of `system`.
ComplexMatrix apply_channel(const ComplexMatrix& rho, std::span<const ComplexMatrix> kraus, QubitLabel target,
                            const QubitOrder& system);

/// U^(1/n) on the principal branch of the eigenphases.
ComplexMatrix unitary_root(const ComplexMatrix& u, std::size_t n);

/// The unitary circuit with every qubit relaxing independently during each gate.
ProtocolResult noisy_unitary_qet(const ModelParams& p, const NoiseParams& np);

struct PerturbationSpec {
    std::vector<double> epsilons;
    bool perturb_a = true;
    bool perturb_b = true;

    /// Finite and sorted ascending.
    void validate() const;
};

struct PerturbationRow {
    double epsilon = 0.0;
    double kappa = 0.0;
    double extraction = 0.0;
    double ideal = 0.0;
    /// (extraction - ideal) / ideal; zero where ideal vanishes.
    double relative_deviation = 0.0;
};

/// Runs the circuit tuned for epsilon = 0 against a Hamiltonian whose sigma_z
/// terms are scaled by (1 + epsilon); extraction is the drop in the true
/// Tr[(H_B + V) rho] between the prepared and final states.
double perturbed_extraction(const ModelParams& p, const LocalFieldScaling& scaling);

/// One row per (epsilon, kappa), epsilon-major. `p.kappa` is replaced by each grid value.
std::vector<PerturbationRow> perturbation_sweep(const ModelParams& p, const PerturbationSpec& spec,
                                                std::span<const double> kappa_grid);

}  // namespace qet

#endif  // QET_NOISE_HPP
