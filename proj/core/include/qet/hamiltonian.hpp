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

#ifndef QET_HAMILTONIAN_HPP
#define QET_HAMILTONIAN_HPP

#include "qet/operator.hpp"

namespace qet {

/// Local fields h_A, h_B and coupling kappa, in units with hbar = 1.
struct ModelParams {
    double h_a = 1.0;
    double h_b = 0.4;
    double kappa = 0.2;

    /// Throws std::invalid_argument unless h_a > 0, h_b > 0 and kappa >= 0 (all finite).
    void validate() const;
};

/// Amplitudes of the ground state (F_plus, F_minus) and of the feedback
/// rotation (F2_plus, F2_minus).
struct DerivedConstants {
    double f = 1.0;
    double f_plus = 0.0;
    double f_minus = 0.0;
    double f2_plus = 0.0;
    double f2_minus = 0.0;
};

/// f = (4 kappa^2 / (h_A + h_B)^2 + 1)^(-1/2)
double coupling_f(const ModelParams& p);
DerivedConstants derived_constants(const ModelParams& p);

/// Relative scaling of the local sigma_z terms: H_nu = -(1 + eps_nu) h_nu sigma_z + h_nu f.
struct LocalFieldScaling {
    double eps_a = 0.0;
    double eps_b = 0.0;
};

/// Operators on the A (x) B register (kPairRegister).
struct HamiltonianSet {
    ComplexMatrix h_a;
    ComplexMatrix h_b;
    ComplexMatrix v;
    ComplexMatrix total;
    /// Smallest eigenvalue of h_b + v, from the Jacobi eigensolver.
    double lambda_min = 0.0;

    ComplexMatrix b_side() const { return h_b + v; }
};

HamiltonianSet build_hamiltonian(const ModelParams& p, const LocalFieldScaling& scaling = {});

/// The model Hamiltonian with its terms placed on an arbitrary register that
/// contains A and B; `ancilla_field` adds ancilla_field * sigma_z on An when the
/// register has one.
HamiltonianSet embed_hamiltonian(const HamiltonianSet& h, const QubitOrder& system, double ancilla_field = 0.0);

/// Analytic ground state (F_+ |00> - F_- |11>)/sqrt(2) on kPairRegister.
StateVector ground_state(const ModelParams& p);

/// -sqrt(h_B^2 + 4k^2) + [h_B (h_A + h_B) + 4k^2] / sqrt((h_A + h_B)^2 + 4k^2).
///
/// Often stated as the maximum extractable energy,
/// but it evaluates to the most negative eigenvalue of H_B + V, which is <= 0.
double closed_form_lambda_min(const ModelParams& p);

/// Tight upper bound on energy extractable from B by feedback: -lambda_min(H_B + V) >= 0.
double max_extractable_energy(const ModelParams& p);

/// Average energy the sigma_x measurement deposits on A: h_A f.
double injected_energy(const ModelParams& p);

}  // namespace qet

#endif  // QET_HAMILTONIAN_HPP
