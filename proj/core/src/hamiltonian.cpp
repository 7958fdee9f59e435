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

#include "qet/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qet {

void ModelParams::validate() const {
    if (!std::isfinite(h_a) || !std::isfinite(h_b) || !std::isfinite(kappa)) {
        throw std::invalid_argument("model parameters must be finite");
    }
    if (h_a <= 0.0) throw std::invalid_argument("h_A must be positive, got " + std::to_string(h_a));
    if (h_b <= 0.0) throw std::invalid_argument("h_B must be positive, got " + std::to_string(h_b));
    if (kappa < 0.0) throw std::invalid_argument("kappa must be nonnegative, got " + std::to_string(kappa));
}

double coupling_f(const ModelParams& p) {
    p.validate();
    const double sum = p.h_a + p.h_b;
    return 1.0 / std::sqrt(4.0 * p.kappa * p.kappa / (sum * sum) + 1.0);
}

DerivedConstants derived_constants(const ModelParams& p) {
    DerivedConstants d;
    d.f = coupling_f(p);
    d.f_plus = std::sqrt(1.0 + d.f);
    // 1 - f underflows to a tiny negative only through rounding.
    d.f_minus = std::sqrt(std::max(0.0, 1.0 - d.f));
    const double ratio = p.h_b / std::hypot(p.h_b, 2.0 * p.kappa);
    d.f2_plus = std::sqrt(1.0 + ratio);
    d.f2_minus = std::sqrt(std::max(0.0, 1.0 - ratio));
    return d;
}

HamiltonianSet build_hamiltonian(const ModelParams& p, const LocalFieldScaling& scaling) {
    const double f = coupling_f(p);
    const auto id2 = pauli::identity();
    const auto local = [&](double h, double eps) {
        return Complex(-(1.0 + eps) * h) * pauli::z() + Complex(h * f) * id2;
    };

    HamiltonianSet hs;
    hs.h_a = embed(local(p.h_a, scaling.eps_a), QubitLabel::A, kPairRegister);
    hs.h_b = embed(local(p.h_b, scaling.eps_b), QubitLabel::B, kPairRegister);
    hs.v = Complex(2.0 * p.kappa) * kron(pauli::x(), pauli::x()) +
           Complex(4.0 * p.kappa * p.kappa / (p.h_a + p.h_b) * f) * ComplexMatrix::identity(4);
    hs.total = hs.h_a + hs.h_b + hs.v;
    hs.lambda_min = hermitian_eig(hs.b_side()).values.front();
    return hs;
}

HamiltonianSet embed_hamiltonian(const HamiltonianSet& h, const QubitOrder& system, double ancilla_field) {
    const auto place = [&](const ComplexMatrix& op) { return embed(op, QubitLabel::A, QubitLabel::B, system); };
    HamiltonianSet out;
    out.h_a = place(h.h_a);
    out.h_b = place(h.h_b);
    out.v = place(h.v);
    out.total = out.h_a + out.h_b + out.v;
    if (ancilla_field != 0.0) out.total += Complex(ancilla_field) * embed(pauli::z(), QubitLabel::An, system);
    out.lambda_min = h.lambda_min;
    return out;
}

StateVector ground_state(const ModelParams& p) {
    const auto d = derived_constants(p);
    StateVector g(4);
    g[0b00] = d.f_plus / std::sqrt(2.0);
    g[0b11] = -d.f_minus / std::sqrt(2.0);
    return g;
}

double closed_form_lambda_min(const ModelParams& p) {
    p.validate();
    const double k2 = 4.0 * p.kappa * p.kappa;
    const double sum = p.h_a + p.h_b;
    return -std::sqrt(p.h_b * p.h_b + k2) + (p.h_b * sum + k2) / std::sqrt(sum * sum + k2);
}

double max_extractable_energy(const ModelParams& p) {
    p.validate();
    // Same value as -closed_form_lambda_min, rationalized so the two square
    // roots never cancel: 4 k^2 h_A^2 / (c (a c + b)).
    const double k2 = 4.0 * p.kappa * p.kappa;
    const double sum = p.h_a + p.h_b;
    const double a = std::sqrt(p.h_b * p.h_b + k2);
    const double b = p.h_b * sum + k2;
    const double c = std::sqrt(sum * sum + k2);
    return k2 * p.h_a * p.h_a / (c * (a * c + b));
}

double injected_energy(const ModelParams& p) { return p.h_a * coupling_f(p); }

}  // namespace qet
