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

#include "qet/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qet {

namespace {

void validate_relaxation(const QubitRelaxation& r, const char* name) {
    if (!(r.t1 > 0.0) || !(r.t2 > 0.0)) {
        throw std::invalid_argument(std::string("relaxation times of qubit ") + name + " must be positive");
    }
    if (r.t2 > 2.0 * r.t1) {
        throw std::invalid_argument(std::string("qubit ") + name + ": T2 exceeds 2 T1, channel would be unphysical");
    }
}

// Independent relaxation of every qubit in the circuit register.
ComplexMatrix relax_all(const ComplexMatrix& rho, double t, const NoiseParams& np) {
    ComplexMatrix out = rho;
    for (QubitLabel q : kCircuitRegister) {
        const auto kraus = relaxation_channel(q, t, np);
        out = apply_channel(out, kraus, q, kCircuitRegister);
    }
    return out;
}

ComplexMatrix noisy_gate(const ComplexMatrix& rho, const ComplexMatrix& gate, double duration, const NoiseParams& np) {
    if (np.placement == NoisePlacement::PerGate) return relax_all(conjugate(gate, rho), duration, np);

    const auto steps = static_cast<std::size_t>(std::ceil(duration / np.dt - 1e-9));
    const double slice = duration / static_cast<double>(steps);
    const auto root = unitary_root(gate, steps);
    ComplexMatrix out = rho;
    for (std::size_t s = 0; s < steps; ++s) out = relax_all(conjugate(root, out), slice, np);
    return out;
}

}  // namespace

NoiseParams NoiseParams::uniform(double t1, double t2) {
    NoiseParams np;
    np.a = np.b = np.an = QubitRelaxation{t1, t2};
    return np;
}

const QubitRelaxation& NoiseParams::relaxation(QubitLabel q) const {
    switch (q) {
        case QubitLabel::A:
            return a;
        case QubitLabel::B:
            return b;
        case QubitLabel::An:
            return an;
    }
    throw std::invalid_argument("unknown qubit label");
}

NoiseParams NoiseParams::with_scaled_durations(double factor) const {
    NoiseParams out = *this;
    out.durations.prep *= factor;
    out.durations.ana *= factor;
    out.durations.ban *= factor;
    return out;
}

void NoiseParams::validate() const {
    validate_relaxation(a, "A");
    validate_relaxation(b, "B");
    validate_relaxation(an, "An");
    if (!(dt > 0.0)) throw std::invalid_argument("noise step dt must be positive");
    for (double d : {durations.prep, durations.ana, durations.ban}) {
        if (!(d >= dt)) throw std::invalid_argument("gate durations must be at least dt");
    }
}

std::vector<ComplexMatrix> relaxation_kraus(double t, const QubitRelaxation& relax) {
    validate_relaxation(relax, "?");
    if (!(t >= 0.0)) throw std::invalid_argument("relaxation time span must be nonnegative");

    const double gamma = -std::expm1(-t / relax.t1);
    const double dephasing_rate = std::max(0.0, 1.0 / relax.t2 - 1.0 / (2.0 * relax.t1));
    const double coherence = std::exp(-t * dephasing_rate);

    const ComplexMatrix damp0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}};
    const ComplexMatrix damp1{{0.0, std::sqrt(gamma)}, {0.0, 0.0}};
    const auto keep = Complex(std::sqrt((1.0 + coherence) / 2.0)) * pauli::identity();
    const auto flip = Complex(std::sqrt((1.0 - coherence) / 2.0)) * pauli::z();
    return {keep * damp0, keep * damp1, flip * damp0, flip * damp1};
}

std::vector<ComplexMatrix> relaxation_channel(QubitLabel q, double t, const NoiseParams& np) {
    return relaxation_kraus(t, np.relaxation(q));
}

ComplexMatrix apply_channel(const ComplexMatrix& rho, std::span<const ComplexMatrix> kraus, QubitLabel target,
                            const QubitOrder& system) {
    ComplexMatrix out(rho.dim());
    for (const auto& k : kraus) out += conjugate(embed(k, target, system), rho);
    return out;
}

ComplexMatrix unitary_root(const ComplexMatrix& u, std::size_t n) {
    if (n == 0) throw std::invalid_argument("unitary_root: n must be positive");
    if (!u.is_unitary(1e-9)) throw std::invalid_argument("unitary_root: matrix is not unitary");
    if (n == 1) return u;
    // U is normal, so its Hermitian and anti-Hermitian parts share eigenvectors;
    // an irrational mix separates eigenvalues that differ only in phase sign.
    const auto re = Complex(0.5) * (u + u.adjoint());
    const auto im = Complex(0.0, -0.5) * (u - u.adjoint());
    const auto eig = hermitian_eig(re + Complex(std::sqrt(2.0) - 1.0) * im);
    const auto d = eig.vectors.adjoint() * u * eig.vectors;
    std::vector<Complex> phases(u.dim());
    for (std::size_t i = 0; i < u.dim(); ++i) {
        for (std::size_t j = 0; j < u.dim(); ++j) {
            if (i != j && std::abs(d(i, j)) > 1e-8) throw std::runtime_error("unitary_root: eigenbasis not resolved");
        }
        phases[i] = std::polar(1.0, std::arg(d(i, i)) / static_cast<double>(n));
    }
    return eig.vectors * ComplexMatrix::diagonal(phases) * eig.vectors.adjoint();
}

ProtocolResult noisy_unitary_qet(const ModelParams& p, const NoiseParams& np) {
    np.validate();
    const auto hs = build_hamiltonian(p);
    const auto h3 = embed_hamiltonian(hs, kCircuitRegister);
    const auto gates = circuit_gates(p);

    const auto rho_prepared = noisy_gate(ComplexMatrix::projector(basis_state(8, 0)), gates.prep, np.durations.prep, np);
    const auto rho_entangled = noisy_gate(rho_prepared, gates.ana, np.durations.ana, np);
    auto r = summarize_circuit_state(noisy_gate(rho_entangled, gates.ban, np.durations.ban, np), hs);
    r.injected_energy = expectation(rho_entangled, h3.total) - expectation(rho_prepared, h3.total);
    return r;
}

void PerturbationSpec::validate() const {
    if (epsilons.empty()) throw std::invalid_argument("perturbation grid is empty");
    for (double e : epsilons) {
        if (!std::isfinite(e) || e <= -1.0) throw std::invalid_argument("perturbation epsilon must be finite and > -1");
    }
    if (!std::is_sorted(epsilons.begin(), epsilons.end())) throw std::invalid_argument("perturbation grid must be sorted");
}

double perturbed_extraction(const ModelParams& p, const LocalFieldScaling& scaling) {
    const auto gates = circuit_gates(p);
    const auto truth = build_hamiltonian(p, scaling);
    const auto prepared = conjugate(gates.prep, ComplexMatrix::projector(basis_state(8, 0)));
    const auto final_state = conjugate(gates.ban, conjugate(gates.ana, prepared));
    const double before = summarize_circuit_state(prepared, truth).energy_extracted;
    const double after = summarize_circuit_state(final_state, truth).energy_extracted;
    return after - before;
}

std::vector<PerturbationRow> perturbation_sweep(const ModelParams& p, const PerturbationSpec& spec,
                                                std::span<const double> kappa_grid) {
    spec.validate();
    std::vector<PerturbationRow> rows;
    rows.reserve(spec.epsilons.size() * kappa_grid.size());
    for (double eps : spec.epsilons) {
        const LocalFieldScaling scaling{spec.perturb_a ? eps : 0.0, spec.perturb_b ? eps : 0.0};
        for (double kappa : kappa_grid) {
            ModelParams q = p;
            q.kappa = kappa;
            PerturbationRow row;
            row.epsilon = eps;
            row.kappa = kappa;
            row.extraction = perturbed_extraction(q, scaling);
            row.ideal = max_extractable_energy(q);
            row.relative_deviation = row.ideal > 0.0 ? (row.extraction - row.ideal) / row.ideal : 0.0;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace qet
