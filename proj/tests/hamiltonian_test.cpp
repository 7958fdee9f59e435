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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qet/random.hpp"

namespace qet {
namespace {

const ModelParams kReference{1.0, 0.4, 0.2};

TEST(CouplingF, ZeroCouplingIsOne) { EXPECT_DOUBLE_EQ(coupling_f({1.0, 0.4, 0.0}), 1.0); }

TEST(CouplingF, ReferenceValues) {
    EXPECT_NEAR(coupling_f(kReference), 0.961523947641, 1e-12);
    EXPECT_NEAR(coupling_f({1.0, 1.0, 0.5}), 0.894427191000, 1e-12);
    EXPECT_NEAR(coupling_f(kReference), oracle::f(1.0, 0.4, 0.2), 1e-15);
}

TEST(CouplingF, StrictlyDecreasingInKappa) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> k(0.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        auto p = random_params(rng);
        double k1 = k(rng), k2 = k(rng);
        if (k1 == k2) continue;
        if (k1 > k2) std::swap(k1, k2);
        ModelParams lo = p, hi = p;
        lo.kappa = k1;
        hi.kappa = k2;
        EXPECT_GT(coupling_f(lo), coupling_f(hi));
        EXPECT_GT(coupling_f(hi), 0.0);
        EXPECT_LE(coupling_f(lo), 1.0);
    }
}

TEST(ModelParams, ValidationRejectsNonPositiveFields) {
    EXPECT_THROW(coupling_f({0.0, 0.4, 0.2}), std::invalid_argument);
    EXPECT_THROW(coupling_f({1.0, -0.4, 0.2}), std::invalid_argument);
    EXPECT_THROW(coupling_f({1.0, 0.4, -0.1}), std::invalid_argument);
    EXPECT_THROW(coupling_f({1.0, NAN, 0.1}), std::invalid_argument);
}

TEST(DerivedConstants, AmplitudeIdentities) {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 100; ++i) {
        const auto d = derived_constants(random_params(rng));
        EXPECT_NEAR(d.f_plus * d.f_plus + d.f_minus * d.f_minus, 2.0, 1e-14);
        EXPECT_NEAR(d.f2_plus * d.f2_plus + d.f2_minus * d.f2_minus, 2.0, 1e-14);
        EXPECT_NEAR(d.f_plus * d.f_plus - 1.0, d.f, 1e-14);
        EXPECT_GE(d.f_minus, 0.0);
        EXPECT_GE(d.f2_minus, 0.0);
    }
}

TEST(BuildHamiltonian, ZeroCouplingIsDiagonalWithoutInteraction) {
    const auto hs = build_hamiltonian({1.0, 0.4, 0.0});
    EXPECT_EQ(hs.v.max_abs(), 0.0);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            if (i != j) EXPECT_EQ(hs.total(i, j), Complex(0.0));
        }
    }
    EXPECT_NEAR(hs.lambda_min, 0.0, 1e-15);
}

TEST(BuildHamiltonian, TotalIsSumOfTerms) {
    const auto hs = build_hamiltonian(kReference);
    EXPECT_EQ(max_abs_diff(hs.total, hs.h_a + hs.h_b + hs.v), 0.0);
    EXPECT_TRUE(hs.total.is_hermitian());
}

TEST(BuildHamiltonian, ReferenceLambdaMin) {
    const auto hs = build_hamiltonian(kReference);
    EXPECT_NEAR(hs.lambda_min, oracle::lambda_min(1.0, 0.4, 0.2), 1e-12);
    EXPECT_NEAR(hs.lambda_min, -0.071187394734, 1e-11);
}

TEST(BuildHamiltonian, NonnegativeWithZeroGroundEnergy) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const auto hs = build_hamiltonian(random_params(rng));
        EXPECT_NEAR(hermitian_eig(hs.total).values.front(), 0.0, 1e-9);
    }
}

TEST(BuildHamiltonian, PerturbationScalesOnlyTheSigmaZTerm) {
    const auto plain = build_hamiltonian(kReference);
    const auto scaled = build_hamiltonian(kReference, {0.0, 0.3});
    EXPECT_EQ(max_abs_diff(plain.h_a, scaled.h_a), 0.0);
    const auto delta = scaled.h_b - plain.h_b;
    oracle::expect_matrix_near(delta, Complex(-0.3 * 0.4) * embed(pauli::z(), QubitLabel::B, kPairRegister), 1e-15);
}

TEST(GroundState, ZeroCouplingIsProductState) {
    const auto g = ground_state({1.0, 0.4, 0.0});
    EXPECT_NEAR(std::abs(g[0] - 1.0), 0.0, 1e-15);
    EXPECT_EQ(g[3], Complex(0.0));
}

TEST(GroundState, StrongCouplingApproachesBellState) {
    const auto g = ground_state({1.0, 0.4, 1e6});
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(g[0].real(), s, 1e-6);
    EXPECT_NEAR(g[3].real(), -s, 1e-6);
}

TEST(GroundState, ReferenceAmplitudes) {
    const auto d = derived_constants(kReference);
    EXPECT_NEAR(d.f_plus, 1.400544161260, 1e-11);
    EXPECT_NEAR(d.f_minus, 0.196153134972, 1e-11);
}

TEST(GroundState, AnnihilatedByHamiltonianAndTermsVanish) {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
        const auto p = random_params(rng);
        const auto hs = build_hamiltonian(p);
        const auto g = ground_state(p);
        EXPECT_NEAR(norm(g), 1.0, 1e-14);
        EXPECT_LE(norm(hs.total * g), 1e-9);
        EXPECT_NEAR(expectation(g, hs.h_a), 0.0, 1e-9);
        EXPECT_NEAR(expectation(g, hs.h_b), 0.0, 1e-9);
        EXPECT_NEAR(expectation(g, hs.v), 0.0, 1e-9);
    }
}

TEST(MaxExtractableEnergy, ZeroCoupling) { EXPECT_NEAR(max_extractable_energy({1.0, 0.4, 0.0}), 0.0, 1e-12); }

TEST(MaxExtractableEnergy, ReferenceValues) {
    EXPECT_NEAR(max_extractable_energy(kReference), 0.071187394734, 1e-11);
    EXPECT_NEAR(max_extractable_energy({1.0, 1.0, 0.5}), 0.072572775873, 1e-11);
}

TEST(MaxExtractableEnergy, MatchesEigenOracleOnRandomDraws) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const auto p = random_params(rng);
        const double bound = max_extractable_energy(p);
        EXPECT_NEAR(bound, -build_hamiltonian(p).lambda_min, 1e-9);
        EXPECT_NEAR(bound, -oracle::lambda_min(p.h_a, p.h_b, p.kappa), 1e-9);
        EXPECT_GE(bound, 0.0);
        if (p.kappa > 1e-3) EXPECT_GT(bound, 0.0);
    }
}

TEST(MaxExtractableEnergy, ClosedFormIsTheNegativeEigenvalue) {
    // The closed form returns lambda_min itself (<= 0).
    for (double kappa : {0.05, 0.2, 0.5, 1.0, 2.0}) {
        const ModelParams p{1.0, 0.4, kappa};
        EXPECT_NEAR(closed_form_lambda_min(p), build_hamiltonian(p).lambda_min, 1e-12);
        EXPECT_LT(closed_form_lambda_min(p), 0.0);
    }
}

TEST(InjectedEnergy, Values) {
    EXPECT_DOUBLE_EQ(injected_energy({1.0, 0.4, 0.0}), 1.0);
    EXPECT_NEAR(injected_energy(kReference), 0.961523947641, 1e-12);
}

TEST(InjectedEnergy, BoundsExtraction) {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 100; ++i) {
        const auto p = random_params(rng);
        EXPECT_GE(injected_energy(p) - max_extractable_energy(p), 0.0);
    }
}

TEST(EmbedHamiltonian, CircuitRegisterPreservesSpectrum) {
    const auto hs = build_hamiltonian(kReference);
    const auto h3 = embed_hamiltonian(hs, kCircuitRegister);
    const auto e2 = hermitian_eig(hs.total).values;
    const auto e3 = hermitian_eig(h3.total).values;
    // Each pair eigenvalue appears twice (An is a spectator).
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(e3[2 * k], e2[k], 1e-12);
        EXPECT_NEAR(e3[2 * k + 1], e2[k], 1e-12);
    }
}

}  // namespace
}  // namespace qet
