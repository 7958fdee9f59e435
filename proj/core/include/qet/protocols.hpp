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

#ifndef QET_PROTOCOLS_HPP
#define QET_PROTOCOLS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "qet/hamiltonian.hpp"
#include "qet/operator.hpp"

namespace qet {

/// Outcome of the sigma_x^A measurement. P(mu) = (1 - mu sigma_x^A) / 2.
enum class Outcome : int { Plus = 1, Minus = -1 };

inline constexpr std::array<Outcome, 2> kOutcomes{Outcome::Plus, Outcome::Minus};

constexpr int sign(Outcome mu) { return static_cast<int>(mu); }
constexpr std::size_t index(Outcome mu) { return mu == Outcome::Plus ? 0 : 1; }

/// Projector P(mu) on kPairRegister.
ComplexMatrix measurement_projector(Outcome mu);
/// {P(+1), P(-1)}
std::array<ComplexMatrix, 2> measurement_operators();

/// Outcome-conditioned unitaries on B.
struct FeedbackUnitaries {
    ComplexMatrix plus;
    ComplexMatrix minus;

    const ComplexMatrix& operator[](Outcome mu) const { return mu == Outcome::Plus ? plus : minus; }
    /// The same unitary for both outcomes (no communication).
    static FeedbackUnitaries uniform(const ComplexMatrix& u) { return {u, u}; }
};

/// <mu|(H_B + V)|mu>_A: the B-side energy operator seen by B once A is known
/// to be in the sigma_x eigenstate selected by P(mu).
ComplexMatrix conditional_operator(const ModelParams& p, Outcome mu);

/// Normalized state of B after outcome `mu` on the pure pair state `psi`.
StateVector conditional_b_state(std::span<const Complex> psi, Outcome mu);

/// Unitary taking the post-measurement state of B to the lowest eigenvector of
/// conditional_operator, with the overlap <phi|psi_min> made real and
/// nonnegative. Throws std::domain_error if the conditional operator is degenerate.
ComplexMatrix optimal_conditional_unitary(const ModelParams& p, Outcome mu);
FeedbackUnitaries optimal_feedback(const ModelParams& p);

struct ProtocolResult {
    /// Final state on the register the protocol ran on.
    ComplexMatrix rho_final;
    /// Final state reduced to kPairRegister.
    ComplexMatrix rho_ab;
    ComplexMatrix rho_b;
    double injected_energy = 0.0;
    /// -Tr[(H_B + V) rho_ab]
    double energy_extracted = 0.0;
    double exp_zb = 0.0;
    double exp_xaxb = 0.0;
    /// Keyed by outcome sign.
    std::map<int, double> outcome_probs;
};

/// Measure sigma_x^A, then apply ub(mu) on B. rho0 defaults to |g><g|.
ProtocolResult run_minimal_qet(const ModelParams& p, const FeedbackUnitaries& ub,
                               const std::optional<ComplexMatrix>& rho0 = std::nullopt);

struct NoFeedbackSearch {
    double best_extraction = 0.0;
    ComplexMatrix best_unitary;
};

/// Largest extraction from |g><g| over `samples` Haar-random unitaries applied
/// on B regardless of the outcome.
NoFeedbackSearch no_feedback_search(const ModelParams& p, std::size_t samples, std::uint64_t seed);

/// Y(theta) = -(1/sqrt 2) [[F+, F-], [-F-, F+]].
ComplexMatrix y_rotation(const ModelParams& p);
/// CNOT with the more significant qubit as control.
ComplexMatrix cnot();
ComplexMatrix swap_gate();

/// Y(theta) on B followed by CNOT(B -> A), on kPairRegister.
ComplexMatrix u_prep(const ModelParams& p);
/// Preparation routed through the ancilla on kCircuitRegister:
/// Y_B, SWAP(B, An), CNOT(An -> A), SWAP(B, An).
ComplexMatrix u_prep_mediated(const ModelParams& p);

/// The fixed two-qubit entangler between An and A (An is the first factor).
ComplexMatrix u_ana();

ComplexMatrix u_rot_v(const ModelParams& p);
ComplexMatrix u_diag(const ModelParams& p);

enum class AncillaBasis { Computational, SigmaX };

/// How the fixed 4x4 gates sit on the three-qubit register and in which
/// ancilla basis the feedback reads out the outcome.
struct CircuitConvention {
    bool ana_ancilla_first = true;  // U_AnA acts on An (x) A
    bool ban_b_first = true;        // U_BAn acts on B (x) An
    AncillaBasis readout = AncillaBasis::SigmaX;

    bool operator==(const CircuitConvention&) const = default;
};

std::string to_string(const CircuitConvention& c);

/// Convention under which the fixed gates reproduce the ideal protocol.
inline constexpr CircuitConvention kResolvedConvention{true, true, AncillaBasis::SigmaX};

struct BAnUnitaries {
    ComplexMatrix rot_v;
    ComplexMatrix diag;
    ComplexMatrix product;  // rot_v * diag, on B (x) An
    /// Conditional blocks U_B(mu) = <pi(mu)|U_BAn|mu>_An.
    FeedbackUnitaries blocks;
    /// Ancilla output label reached from each input label (index() order).
    std::array<Outcome, 2> ancilla_output{Outcome::Plus, Outcome::Minus};
    /// Largest entry of the discarded off-diagonal blocks.
    double block_residual = 0.0;
};

/// Splits U_BAn (given on B (x) An) into outcome-conditioned blocks in `readout`.
/// Returns std::nullopt when no permutation of the ancilla output makes it
/// block structured within `tol`.
std::optional<BAnUnitaries> extract_blocks(const ComplexMatrix& u_ban_b_first, AncillaBasis readout,
                                           double tol = 1e-10);

/// U_BAn = U_RotV U_diag with its conditional blocks under kResolvedConvention.
/// Throws std::runtime_error if the block structure is broken.
BAnUnitaries u_ban(const ModelParams& p);

struct ConventionCandidate {
    CircuitConvention convention;
    bool bell_state_ok = false;
    bool block_ok = false;
    double extraction = 0.0;
    bool optimal = false;
};

/// Enumerates every ordering and readout basis and reports which ones
/// reproduce the Bell-basis state, the block form and the -lambda_min bound.
std::vector<ConventionCandidate> survey_conventions(const ModelParams& p);
/// First fully consistent candidate; throws std::runtime_error if none is.
CircuitConvention resolve_convention(const ModelParams& p);

struct UnitaryQetOptions {
    /// Scale of the ancilla self-energy ancilla_field * sigma_z^An in the
    /// injected-energy bookkeeping; unfixed by the model, zero by default.
    double ancilla_field = 0.0;
    CircuitConvention convention = kResolvedConvention;
};

/// Gates of the three-qubit circuit on kCircuitRegister, in application order.
struct CircuitGates {
    ComplexMatrix prep;
    ComplexMatrix ana;
    ComplexMatrix ban;
};

CircuitGates circuit_gates(const ModelParams& p, const CircuitConvention& convention = kResolvedConvention);

/// Shared bookkeeping for a three-qubit final state: reduces to A (x) B and
/// fills the energy and expectation fields against `hamiltonian`.
ProtocolResult summarize_circuit_state(const ComplexMatrix& rho_final, const HamiltonianSet& hamiltonian);

/// |000> -> U_prep -> U_AnA -> U_BAn on kCircuitRegister.
ProtocolResult run_unitary_qet(const ModelParams& p, const UnitaryQetOptions& options = {});

/// State of B, An, A right after U_AnA, as amplitudes on kCircuitRegister.
StateVector post_entangler_state(const ModelParams& p, const CircuitConvention& convention = kResolvedConvention);

struct EquivalenceReport {
    /// max |rho_B(unitary) - rho_B(minimal)|
    double max_diff = 0.0;
    /// c_mu in <mu|_An |Psi_BAnA> = c_mu (1 - mu sigma_x^A)|g>, readout basis of the convention.
    std::array<Complex, 2> proportionality{};
    /// Residual of that fit.
    double proportionality_residual = 0.0;
};

EquivalenceReport equivalence_report(const ModelParams& p);

struct TimingReport {
    double t_total = 0.0;  // seconds
    double t_c = 0.0;      // seconds
    double margin = 10.0;
    bool pass = false;
};

/// t_total = 1/j_ana + 1/j_ban + t_pulse against t_c = 1/j_ab; passes iff
/// t_total <= t_c / margin.
TimingReport timing_check(double j_ab, double j_ana, double j_ban, double t_pulse, double margin = 10.0);
/// Same policy from measured gate durations (seconds).
TimingReport timing_check_durations(double j_ab, std::span<const double> gate_durations, double margin = 10.0);

}  // namespace qet

#endif  // QET_PROTOCOLS_HPP
