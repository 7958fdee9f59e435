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

#include "qet/operator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qet/hamiltonian.hpp"
#include "qet/random.hpp"

namespace qet {
namespace {

const ComplexMatrix kX = pauli::x();
const ComplexMatrix kZ = pauli::z();
const ComplexMatrix kI = pauli::identity();

TEST(Kron, IdentityTimesIdentity) { oracle::expect_matrix_near(kron(kI, kI), ComplexMatrix::identity(4), 0.0); }

TEST(Kron, BitFlipOnBoth) {
    const auto out = kron(kX, kX) * basis_state(4, 0b00);
    EXPECT_EQ(out, basis_state(4, 0b11));
}

TEST(Kron, EmbeddedPauliSpectrum) {
    const auto eig = hermitian_eig(kron(kZ, kI));
    ASSERT_EQ(eig.values.size(), 4u);
    EXPECT_NEAR(eig.values[0], -1.0, 1e-12);
    EXPECT_NEAR(eig.values[1], -1.0, 1e-12);
    EXPECT_NEAR(eig.values[2], 1.0, 1e-12);
    EXPECT_NEAR(eig.values[3], 1.0, 1e-12);
}

TEST(Kron, RejectsMoreThanThreeQubits) {
    EXPECT_THROW(kron(ComplexMatrix::identity(4), ComplexMatrix::identity(4)), std::invalid_argument);
}

TEST(ComplexMatrix, RejectsUnsupportedDimension) { EXPECT_THROW(ComplexMatrix(3), std::invalid_argument); }

TEST(Embed, FirstFactorIsMostSignificant) {
    const auto out = embed(kX, QubitLabel::A, kPairRegister) * basis_state(4, 0b00);
    EXPECT_EQ(out, basis_state(4, 0b10));
}

TEST(Embed, SecondQubitMatchesKron) {
    oracle::expect_matrix_near(embed(kZ, QubitLabel::B, kPairRegister), kron(kI, kZ), 0.0);
}

TEST(Embed, DisjointSupportsCommute) {
    const auto x_an = embed(kX, QubitLabel::An, kCircuitRegister);
    const auto z_b = embed(kZ, QubitLabel::B, kCircuitRegister);
    EXPECT_EQ(commutator(x_an, z_b).max_abs(), 0.0);
}

TEST(Embed, UnknownLabelThrows) { EXPECT_THROW(embed(kX, QubitLabel::An, kPairRegister), std::invalid_argument); }

TEST(Embed, TwoQubitGateOnNonAdjacentQubits) {
    // CNOT with B controlling A on [B, An, A]: |1,0,0> -> |1,0,1>.
    const ComplexMatrix cnot{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    const auto g = embed(cnot, QubitLabel::B, QubitLabel::A, kCircuitRegister);
    EXPECT_EQ(g * basis_state(8, 0b100), basis_state(8, 0b101));
    EXPECT_EQ(g * basis_state(8, 0b010), basis_state(8, 0b010));
}

TEST(PartialTrace, ProductState) {
    const auto rho = ComplexMatrix::projector(basis_state(4, 0));
    oracle::expect_matrix_near(partial_trace(rho, {QubitLabel::B}, kPairRegister), ComplexMatrix::projector(basis_state(2, 0)),
                               0.0);
}

TEST(PartialTrace, MaximallyEntangledMarginal) {
    const double s = 1.0 / std::sqrt(2.0);
    const StateVector phi_minus{s, 0, 0, -s};
    const auto reduced = partial_trace(ComplexMatrix::projector(phi_minus), {QubitLabel::A}, kPairRegister);
    oracle::expect_matrix_near(reduced, Complex(0.5) * ComplexMatrix::identity(2), 1e-15);
}

TEST(PartialTrace, GroundStateMarginalSpectrum) {
    const ModelParams p{1.0, 0.4, 0.2};
    const auto rho_b = partial_trace(ComplexMatrix::projector(ground_state(p)), {QubitLabel::B}, kPairRegister);
    // Analytic marginal of (F+|00> - F-|11>)/sqrt2 is diag(F+^2/2, F-^2/2) = diag((1+f)/2, (1-f)/2).
    const double ff = oracle::f(1.0, 0.4, 0.2);
    const auto eig = hermitian_eig(rho_b);
    EXPECT_NEAR(eig.values[0], (1.0 - ff) / 2.0, 1e-12);
    EXPECT_NEAR(eig.values[1], (1.0 + ff) / 2.0, 1e-12);
}

TEST(PartialTrace, KeepMustBeSubset) {
    const auto rho = ComplexMatrix::projector(basis_state(4, 0));
    EXPECT_THROW(partial_trace(rho, {QubitLabel::An}, kPairRegister), std::invalid_argument);
}

TEST(PartialTrace, ComplementarySubsetsLeaveUnitScalar) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rho = random_density_matrix(8, rng);
        const auto kept = partial_trace(rho, {QubitLabel::B, QubitLabel::A}, kCircuitRegister);
        const auto scalar = partial_trace(kept, {}, {QubitLabel::B, QubitLabel::A});
        ASSERT_EQ(scalar.dim(), 1u);
        EXPECT_NEAR(scalar(0, 0).real(), 1.0, 1e-12);
        EXPECT_NEAR(kept.trace().real(), 1.0, 1e-12);
    }
}

TEST(Reorder, ProductStateFactorsSwap) {
    const auto rho = kron(ComplexMatrix::projector(basis_state(2, 1)), ComplexMatrix::projector(basis_state(2, 0)));
    const auto swapped = reorder(rho, kPairRegister, {QubitLabel::B, QubitLabel::A});
    oracle::expect_matrix_near(swapped, ComplexMatrix::projector(basis_state(4, 0b01)), 0.0);
}

TEST(Reorder, PermutationIsInvertibleOnRandomStates) {
    std::mt19937_64 rng(5);
    const QubitOrder shuffled{QubitLabel::A, QubitLabel::B, QubitLabel::An};
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = random_density_matrix(8, rng);
        const auto back = reorder(reorder(rho, kCircuitRegister, shuffled), shuffled, kCircuitRegister);
        EXPECT_LE(max_abs_diff(back, rho), 1e-15);
        // The marginal of each qubit survives the relabeling.
        const auto m1 = partial_trace(rho, {QubitLabel::An}, kCircuitRegister);
        const auto m2 = partial_trace(reorder(rho, kCircuitRegister, shuffled), {QubitLabel::An}, shuffled);
        EXPECT_LE(max_abs_diff(m1, m2), 1e-14);
    }
}

TEST(HermitianEig, PauliZ) {
    const auto eig = hermitian_eig(kZ);
    EXPECT_NEAR(eig.values[0], -1.0, 1e-15);
    EXPECT_NEAR(eig.values[1], 1.0, 1e-15);
}

TEST(HermitianEig, AnticommutingPaulis) {
    for (auto [a, b] : {std::pair{0.3, 0.4}, std::pair{-1.2, 2.5}, std::pair{0.0, 1.0}}) {
        const auto m = Complex(a) * kZ + Complex(b) * kX;
        const auto eig = hermitian_eig(m);
        EXPECT_NEAR(eig.values[0], -std::hypot(a, b), 1e-14);
        EXPECT_NEAR(eig.values[1], std::hypot(a, b), 1e-14);
    }
}

TEST(HermitianEig, ModelHamiltonianLowestEigenvalueIsZero) {
    const auto hs = build_hamiltonian({1.0, 0.4, 0.2});
    EXPECT_NEAR(hermitian_eig(hs.total).values.front(), 0.0, 1e-12);
}

TEST(HermitianEig, RejectsNonHermitian) {
    const ComplexMatrix m{{0.0, 1.0}, {0.0, 0.0}};
    EXPECT_THROW(hermitian_eig(m), std::invalid_argument);
}

TEST(HermitianEig, ReconstructsRandomHermitian8x8) {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        ComplexMatrix m(8);
        for (std::size_t i = 0; i < 8; ++i) {
            m(i, i) = g(rng);
            for (std::size_t j = i + 1; j < 8; ++j) {
                m(i, j) = Complex(g(rng), g(rng));
                m(j, i) = std::conj(m(i, j));
            }
        }
        const auto eig = hermitian_eig(m);
        EXPECT_TRUE(std::is_sorted(eig.values.begin(), eig.values.end()));
        std::vector<Complex> lambdas(eig.values.begin(), eig.values.end());
        const auto rebuilt = eig.vectors * ComplexMatrix::diagonal(lambdas) * eig.vectors.adjoint();
        EXPECT_LE(max_abs_diff(rebuilt, m), 1e-8);
        EXPECT_LE(unitarity_residual(eig.vectors), 1e-9);
        for (std::size_t k = 0; k < 8; ++k) {
            const auto v = column(eig.vectors, k);
            const auto mv = m * v;
            double residual = 0.0;
            for (std::size_t i = 0; i < 8; ++i) residual = std::max(residual, std::abs(mv[i] - eig.values[k] * v[i]));
            EXPECT_LE(residual, 1e-9 * std::max(1.0, m.max_abs()));
        }
    }
}

TEST(HermitianEig, DegenerateSpectrumStaysOrthonormal) {
    const auto eig = hermitian_eig(kron(kZ, kron(kI, kI)));
    EXPECT_LE(unitarity_residual(eig.vectors), 1e-12);
}

TEST(Expectation, ZOnGroundOfQubit) {
    EXPECT_DOUBLE_EQ(expectation(ComplexMatrix::projector(basis_state(2, 0)), kZ), 1.0);
}

TEST(Expectation, CorrelatorVanishesAsCouplingGoesToZero) {
    double previous = 1.0;
    for (double kappa : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const auto rho = ComplexMatrix::projector(ground_state({1.0, 0.4, kappa}));
        const double c = std::abs(expectation(rho, kron(kX, kX)));
        EXPECT_LT(c, previous);
        previous = c;
    }
    EXPECT_LT(previous, 1e-3);
}

TEST(Expectation, InteractionVanishesOnGroundState) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto p = random_params(rng);
        EXPECT_NEAR(expectation(ground_state(p), build_hamiltonian(p).v), 0.0, 1e-12);
    }
}

TEST(Expectation, DimensionMismatchThrows) {
    EXPECT_THROW(expectation(ComplexMatrix::identity(4), kZ), std::invalid_argument);
}

TEST(Expectation, NonHermitianObservableIsFlagged) {
    const ComplexMatrix rho{{0.5, 0.5}, {0.5, 0.5}};
    EXPECT_THROW(expectation(rho, pauli::y() * kX + Complex(0.0, 1.0) * kI), std::domain_error);
}

TEST(Validity, DensityMatrixPredicate) {
    EXPECT_TRUE(ComplexMatrix::projector(basis_state(4, 2)).is_density_matrix());
    EXPECT_FALSE(ComplexMatrix::identity(2).is_density_matrix());
    const ComplexMatrix negative{{1.2, 0.0}, {0.0, -0.2}};
    EXPECT_FALSE(negative.is_density_matrix());
}

}  // namespace
}  // namespace qet
