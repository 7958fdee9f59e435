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

#include "qet/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "qet/random.hpp"

namespace qet {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Eigenvector of sigma_x with eigenvalue -mu, i.e. the range of P(mu).
StateVector sigma_x_eigenstate(Outcome mu) {
    const double s = -static_cast<double>(sign(mu));
    return {kInvSqrt2, s * kInvSqrt2};
}

StateVector readout_state(AncillaBasis basis, Outcome mu) {
    if (basis == AncillaBasis::Computational) return basis_state(2, index(mu));
    // |+> carries mu = +1, |-> carries mu = -1.
    const double s = static_cast<double>(sign(mu));
    return {kInvSqrt2, s * kInvSqrt2};
}

ComplexMatrix hadamard() { return {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}}; }

void require_unitary(const ComplexMatrix& u, std::size_t dim, const char* what) {
    if (u.dim() != dim) throw std::invalid_argument(std::string(what) + ": wrong dimension");
    if (!u.is_unitary(1e-9)) throw std::invalid_argument(std::string(what) + ": not unitary");
}

// Spin-flip partner (-conj(b), conj(a)) of a qubit state (a, b).
StateVector orthogonal_partner(std::span<const Complex> v) { return {-std::conj(v[1]), std::conj(v[0])}; }

}  // namespace

ComplexMatrix measurement_projector(Outcome mu) {
    const auto x_a = embed(pauli::x(), QubitLabel::A, kPairRegister);
    return Complex(0.5) * (ComplexMatrix::identity(4) - Complex(sign(mu)) * x_a);
}

std::array<ComplexMatrix, 2> measurement_operators() {
    return {measurement_projector(Outcome::Plus), measurement_projector(Outcome::Minus)};
}

ComplexMatrix conditional_operator(const ModelParams& p, Outcome mu) {
    const auto hs = build_hamiltonian(p);
    const auto op = hs.b_side();
    const auto m = sigma_x_eigenstate(mu);
    ComplexMatrix out(2);
    // kPairRegister index = 2 * a + b
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            Complex s = 0.0;
            for (std::size_t a = 0; a < 2; ++a) {
                for (std::size_t a2 = 0; a2 < 2; ++a2) s += std::conj(m[a]) * op(2 * a + i, 2 * a2 + j) * m[a2];
            }
            out(i, j) = s;
        }
    }
    return out;
}

StateVector conditional_b_state(std::span<const Complex> psi, Outcome mu) {
    if (psi.size() != 4) throw std::invalid_argument("conditional_b_state: expected a two-qubit state");
    const auto m = sigma_x_eigenstate(mu);
    StateVector phi(2);
    for (std::size_t b = 0; b < 2; ++b) {
        for (std::size_t a = 0; a < 2; ++a) phi[b] += std::conj(m[a]) * psi[2 * a + b];
    }
    const double n = norm(phi);
    if (n < 1e-12) throw std::domain_error("conditional_b_state: outcome has zero probability");
    for (auto& z : phi) z /= n;
    return phi;
}

ComplexMatrix optimal_conditional_unitary(const ModelParams& p, Outcome mu) {
    const auto phi = conditional_b_state(ground_state(p), mu);
    const auto eig = hermitian_eig(conditional_operator(p, mu));
    if (eig.values[1] - eig.values[0] < 1e-12) {
        throw std::domain_error("optimal_conditional_unitary: conditional operator is degenerate");
    }
    StateVector target = column(eig.vectors, 0);
    const Complex overlap = inner(phi, target);
    if (std::abs(overlap) > 1e-15) {
        const Complex phase = std::conj(overlap) / std::abs(overlap);
        for (auto& z : target) z *= phase;
    }
    return ComplexMatrix::outer(target, phi) + ComplexMatrix::outer(orthogonal_partner(target), orthogonal_partner(phi));
}

FeedbackUnitaries optimal_feedback(const ModelParams& p) {
    return {optimal_conditional_unitary(p, Outcome::Plus), optimal_conditional_unitary(p, Outcome::Minus)};
}

ProtocolResult run_minimal_qet(const ModelParams& p, const FeedbackUnitaries& ub, const std::optional<ComplexMatrix>& rho0) {
    require_unitary(ub.plus, 2, "run_minimal_qet: U_B(+1)");
    require_unitary(ub.minus, 2, "run_minimal_qet: U_B(-1)");
    const ComplexMatrix rho = rho0 ? *rho0 : ComplexMatrix::projector(ground_state(p));
    if (rho.dim() != 4 || !rho.is_density_matrix(1e-9)) {
        throw std::invalid_argument("run_minimal_qet: initial state is not a two-qubit density matrix");
    }
    const auto hs = build_hamiltonian(p);

    ProtocolResult r;
    ComplexMatrix measured(4);
    r.rho_final = ComplexMatrix(4);
    for (Outcome mu : kOutcomes) {
        const auto proj = measurement_projector(mu);
        const auto branch = proj * rho * proj;
        r.outcome_probs[sign(mu)] = branch.trace().real();
        measured += branch;
        r.rho_final += conjugate(embed(ub[mu], QubitLabel::B, kPairRegister), branch);
    }
    r.rho_ab = r.rho_final;
    r.rho_b = partial_trace(r.rho_ab, {QubitLabel::B}, kPairRegister);
    r.injected_energy = expectation(measured, hs.total) - expectation(rho, hs.total);
    r.energy_extracted = -expectation(r.rho_ab, hs.b_side());
    r.exp_zb = expectation(r.rho_ab, embed(pauli::z(), QubitLabel::B, kPairRegister));
    r.exp_xaxb = expectation(r.rho_ab, kron(pauli::x(), pauli::x()));
    return r;
}

NoFeedbackSearch no_feedback_search(const ModelParams& p, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    NoFeedbackSearch out{-std::numeric_limits<double>::infinity(), ComplexMatrix::identity(2)};
    for (std::size_t i = 0; i < samples; ++i) {
        const auto u = haar_unitary(2, rng);
        const double e = run_minimal_qet(p, FeedbackUnitaries::uniform(u)).energy_extracted;
        if (e > out.best_extraction) out = {e, u};
    }
    return out;
}

ComplexMatrix y_rotation(const ModelParams& p) {
    const auto d = derived_constants(p);
    return Complex(-kInvSqrt2) * ComplexMatrix{{d.f_plus, d.f_minus}, {-d.f_minus, d.f_plus}};
}

ComplexMatrix cnot() { return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}; }

ComplexMatrix swap_gate() { return {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}; }

ComplexMatrix u_prep(const ModelParams& p) {
    return embed(cnot(), QubitLabel::B, QubitLabel::A, kPairRegister) *
           embed(y_rotation(p), QubitLabel::B, kPairRegister);
}

ComplexMatrix u_prep_mediated(const ModelParams& p) {
    const auto& reg = kCircuitRegister;
    const auto swap_b_an = embed(swap_gate(), QubitLabel::B, QubitLabel::An, reg);
    const auto cnot_an_a = embed(cnot(), QubitLabel::An, QubitLabel::A, reg);
    return swap_b_an * cnot_an_a * swap_b_an * embed(y_rotation(p), QubitLabel::B, reg);
}

ComplexMatrix u_ana() {
    return Complex(kInvSqrt2) * ComplexMatrix{{1, 0, 0, 1}, {0, 1, 1, 0}, {0, -1, 1, 0}, {-1, 0, 0, 1}};
}

ComplexMatrix u_rot_v(const ModelParams& p) {
    const auto d = derived_constants(p);
    const double a = d.f2_plus;
    const double b = d.f2_minus;
    return Complex(kInvSqrt2) * ComplexMatrix{{a, b, 0, 0}, {0, 0, -a, b}, {0, 0, b, a}, {-b, a, 0, 0}};
}

ComplexMatrix u_diag(const ModelParams& p) {
    const auto d = derived_constants(p);
    const double a = d.f_plus;
    const double b = d.f_minus;
    return Complex(kInvSqrt2) * ComplexMatrix{{0, a, b, 0}, {b, 0, 0, -a}, {a, 0, 0, b}, {0, -b, a, 0}};
}

std::string to_string(const CircuitConvention& c) {
    std::string s = c.ana_ancilla_first ? "U_AnA on An(x)A" : "U_AnA on A(x)An";
    s += c.ban_b_first ? ", U_BAn on B(x)An" : ", U_BAn on An(x)B";
    s += c.readout == AncillaBasis::SigmaX ? ", sigma_x readout" : ", computational readout";
    return s;
}

std::optional<BAnUnitaries> extract_blocks(const ComplexMatrix& u_ban_b_first, AncillaBasis readout, double tol) {
    if (u_ban_b_first.dim() != 4) throw std::invalid_argument("extract_blocks: expected a two-qubit gate");
    const auto w = kron(pauli::identity(), readout == AncillaBasis::SigmaX ? hadamard() : pauli::identity());
    const auto u = w.adjoint() * u_ban_b_first * w;

    BAnUnitaries out;
    std::array<ComplexMatrix, 2> blocks{ComplexMatrix(2), ComplexMatrix(2)};
    for (std::size_t in = 0; in < 2; ++in) {
        double best_residual = 1e300;
        std::size_t best_out = 0;
        for (std::size_t o = 0; o < 2; ++o) {
            double off = 0.0;
            for (std::size_t i = 0; i < 2; ++i) {
                for (std::size_t j = 0; j < 2; ++j) off = std::max(off, std::abs(u(2 * i + (1 - o), 2 * j + in)));
            }
            if (off < best_residual) {
                best_residual = off;
                best_out = o;
            }
        }
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) blocks[in](i, j) = u(2 * i + best_out, 2 * j + in);
        }
        out.block_residual = std::max(out.block_residual, best_residual);
        out.ancilla_output[in] = best_out == 0 ? Outcome::Plus : Outcome::Minus;
    }
    if (out.block_residual > tol || out.ancilla_output[0] == out.ancilla_output[1]) return std::nullopt;
    if (!blocks[0].is_unitary(tol) || !blocks[1].is_unitary(tol)) return std::nullopt;
    out.blocks = {blocks[0], blocks[1]};
    return out;
}

BAnUnitaries u_ban(const ModelParams& p) {
    const auto rot = u_rot_v(p);
    const auto diag = u_diag(p);
    const auto product = rot * diag;
    auto split = extract_blocks(product, kResolvedConvention.readout, 1e-9);
    if (!split) throw std::runtime_error("u_ban: gate is not block structured under the resolved convention");
    split->rot_v = rot;
    split->diag = diag;
    split->product = product;
    return *split;
}

CircuitGates circuit_gates(const ModelParams& p, const CircuitConvention& convention) {
    const auto& reg = kCircuitRegister;
    CircuitGates g;
    g.prep = u_prep_mediated(p);
    g.ana = convention.ana_ancilla_first ? embed(u_ana(), QubitLabel::An, QubitLabel::A, reg)
                                         : embed(u_ana(), QubitLabel::A, QubitLabel::An, reg);
    const auto product = u_rot_v(p) * u_diag(p);
    g.ban = convention.ban_b_first ? embed(product, QubitLabel::B, QubitLabel::An, reg)
                                   : embed(product, QubitLabel::An, QubitLabel::B, reg);
    return g;
}

ProtocolResult summarize_circuit_state(const ComplexMatrix& rho_final, const HamiltonianSet& hamiltonian) {
    ProtocolResult r;
    r.rho_final = rho_final;
    const auto reduced = partial_trace(rho_final, {QubitLabel::A, QubitLabel::B}, kCircuitRegister);
    r.rho_ab = reorder(reduced, {QubitLabel::B, QubitLabel::A}, kPairRegister);
    r.rho_b = partial_trace(r.rho_ab, {QubitLabel::B}, kPairRegister);
    r.energy_extracted = -expectation(r.rho_ab, hamiltonian.b_side());
    r.exp_zb = expectation(r.rho_ab, embed(pauli::z(), QubitLabel::B, kPairRegister));
    r.exp_xaxb = expectation(r.rho_ab, kron(pauli::x(), pauli::x()));
    return r;
}

ProtocolResult run_unitary_qet(const ModelParams& p, const UnitaryQetOptions& options) {
    const auto hs = build_hamiltonian(p);
    const auto h3 = embed_hamiltonian(hs, kCircuitRegister, options.ancilla_field);
    const auto gates = circuit_gates(p, options.convention);

    const auto rho_prepared = conjugate(gates.prep, ComplexMatrix::projector(basis_state(8, 0)));
    const auto rho_entangled = conjugate(gates.ana, rho_prepared);
    auto r = summarize_circuit_state(conjugate(gates.ban, rho_entangled), hs);
    r.injected_energy = expectation(rho_entangled, h3.total) - expectation(rho_prepared, h3.total);
    for (Outcome mu : kOutcomes) {
        const auto readout = embed(ComplexMatrix::projector(readout_state(options.convention.readout, mu)),
                                   QubitLabel::An, kCircuitRegister);
        r.outcome_probs[sign(mu)] = expectation(rho_entangled, readout);
    }
    return r;
}

StateVector post_entangler_state(const ModelParams& p, const CircuitConvention& convention) {
    const auto g = ground_state(p);
    // |g>_AB with An = |0>, laid out on kCircuitRegister (index 4b + 2an + a).
    StateVector psi(8);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) psi[4 * b + a] = g[2 * a + b];
    }
    return circuit_gates(p, convention).ana * psi;
}

std::vector<ConventionCandidate> survey_conventions(const ModelParams& p) {
    const auto d = derived_constants(p);
    // (F+ |0>_B |Phi^->_AnA - F- |1>_B |Psi^->_AnA) / sqrt(2)
    StateVector expected(8);
    expected[0b000] = d.f_plus / 2.0;
    expected[0b011] = -d.f_plus / 2.0;
    expected[0b101] = -d.f_minus / 2.0;
    expected[0b110] = d.f_minus / 2.0;
    const double bound = max_extractable_energy(p);

    std::vector<ConventionCandidate> out;
    for (bool ana_first : {true, false}) {
        for (bool ban_first : {true, false}) {
            for (AncillaBasis readout : {AncillaBasis::Computational, AncillaBasis::SigmaX}) {
                ConventionCandidate c;
                c.convention = {ana_first, ban_first, readout};
                c.bell_state_ok = std::abs(std::abs(inner(expected, post_entangler_state(p, c.convention))) - 1.0) < 1e-9;
                const auto product = u_rot_v(p) * u_diag(p);
                const auto as_b_first = ban_first ? product : swap_gate() * product * swap_gate();
                c.block_ok = extract_blocks(as_b_first, readout, 1e-9).has_value();
                UnitaryQetOptions opts;
                opts.convention = c.convention;
                c.extraction = run_unitary_qet(p, opts).energy_extracted;
                c.optimal = std::abs(c.extraction - bound) <= 1e-8;
                out.push_back(c);
            }
        }
    }
    return out;
}

CircuitConvention resolve_convention(const ModelParams& p) {
    for (const auto& c : survey_conventions(p)) {
        if (c.bell_state_ok && c.block_ok && c.optimal) return c.convention;
    }
    throw std::runtime_error("resolve_convention: no ordering reproduces the ideal protocol");
}

EquivalenceReport equivalence_report(const ModelParams& p) {
    EquivalenceReport rep;
    const auto unitary = run_unitary_qet(p);
    const auto minimal = run_minimal_qet(p, optimal_feedback(p));
    rep.max_diff = max_abs_diff(unitary.rho_b, minimal.rho_b);

    const auto psi = post_entangler_state(p);
    const auto g = ground_state(p);
    for (Outcome mu : kOutcomes) {
        const auto b_mu = readout_state(kResolvedConvention.readout, mu);
        // <mu|_An |Psi>, laid out on kPairRegister.
        StateVector projected(4);
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                for (std::size_t an = 0; an < 2; ++an) projected[2 * a + b] += std::conj(b_mu[an]) * psi[4 * b + 2 * an + a];
            }
        }
        const auto target = (ComplexMatrix::identity(4) - Complex(sign(mu)) * embed(pauli::x(), QubitLabel::A, kPairRegister)) * g;
        const Complex c = inner(target, projected) / inner(target, target);
        rep.proportionality[index(mu)] = c;
        for (std::size_t i = 0; i < 4; ++i) {
            rep.proportionality_residual = std::max(rep.proportionality_residual, std::abs(projected[i] - c * target[i]));
        }
    }
    return rep;
}

TimingReport timing_check(double j_ab, double j_ana, double j_ban, double t_pulse, double margin) {
    if (!(j_ana > 0.0) || !(j_ban > 0.0) || !(t_pulse > 0.0)) {
        throw std::invalid_argument("timing_check: couplings and pulse time must be positive");
    }
    const std::array<double, 3> durations{1.0 / j_ana, 1.0 / j_ban, t_pulse};
    return timing_check_durations(j_ab, durations, margin);
}

TimingReport timing_check_durations(double j_ab, std::span<const double> gate_durations, double margin) {
    if (!(j_ab > 0.0) || !(margin > 0.0)) throw std::invalid_argument("timing_check: j_ab and margin must be positive");
    TimingReport r;
    for (double t : gate_durations) {
        if (!(t > 0.0)) throw std::invalid_argument("timing_check: gate durations must be positive");
        r.t_total += t;
    }
    r.t_c = 1.0 / j_ab;
    r.margin = margin;
    r.pass = r.t_total <= r.t_c / margin;
    return r;
}

}  // namespace qet
