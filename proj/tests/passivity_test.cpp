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

#include "qet/passivity.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "qet/protocols.hpp"
#include "qet/random.hpp"

namespace qet {
namespace {

const ModelParams kReference{1.0, 0.4, 0.2};

LocalChannelParams random_channel(int rank, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    LocalChannelParams ch;
    ch.kraus_rank = rank;
    ch.params.resize(LocalChannelParams::param_count(rank));
    for (auto& x : ch.params) x = g(rng);
    return ch;
}

TEST(LocalChannel, IdentityLeavesStateUnchanged) {
    std::mt19937_64 rng(101);
    const auto rho = random_density_matrix(4, rng);
    oracle::expect_matrix_near(apply_local_channel(rho, LocalChannelParams::identity()), rho, 1e-14);
}

TEST(LocalChannel, KrausSetIsComplete) {
    std::mt19937_64 rng(103);
    for (int rank = 1; rank <= 4; ++rank) {
        for (int i = 0; i < 10; ++i) {
            const auto kraus = random_channel(rank, rng).kraus();
            ASSERT_EQ(kraus.size(), static_cast<std::size_t>(rank));
            ComplexMatrix sum(2);
            for (const auto& k : kraus) sum += k.adjoint() * k;
            oracle::expect_matrix_near(sum, ComplexMatrix::identity(2), 1e-9);
        }
    }
}

TEST(LocalChannel, FullDepolarizationGivesMaximallyMixedB) {
    const double s = 0.5;
    const std::vector<ComplexMatrix> kraus{Complex(s) * pauli::identity(), Complex(s) * pauli::x(),
                                           Complex(s) * pauli::y(), Complex(s) * pauli::z()};
    const auto rho = ComplexMatrix::projector(ground_state(kReference));
    const auto out = apply_local_channel(rho, kraus);
    oracle::expect_matrix_near(partial_trace(out, {QubitLabel::B}, kPairRegister),
                               Complex(0.5) * ComplexMatrix::identity(2), 1e-14);
}

TEST(LocalChannel, RankOneIsUnitaryConjugation) {
    std::mt19937_64 rng(107);
    const auto u = haar_unitary(2, rng);
    const std::vector<ComplexMatrix> kraus{u};
    const auto rho = random_density_matrix(4, rng);
    oracle::expect_matrix_near(apply_local_channel(rho, kraus),
                               conjugate(embed(u, QubitLabel::B, kPairRegister), rho), 1e-14);
    const auto ch = random_channel(1, rng);
    EXPECT_TRUE(ch.kraus().front().is_unitary(1e-9));
}

TEST(LocalChannel, RejectsIncompleteKraus) {
    const std::vector<ComplexMatrix> kraus{Complex(0.5) * pauli::identity()};
    EXPECT_THROW(apply_local_channel(ComplexMatrix::identity(4), kraus), std::invalid_argument);
}

TEST(LocalChannel, PreservesTraceAndPositivity) {
    std::mt19937_64 rng(109);
    for (int c = 0; c < 100; ++c) {
        const auto ch = random_channel(1 + c % 4, rng);
        for (int s = 0; s < 20; ++s) {
            const auto out = apply_local_channel(random_density_matrix(4, rng), ch);
            ASSERT_NEAR(out.trace().real(), 1.0, 1e-9);
            ASSERT_TRUE(out.is_density_matrix(1e-9));
        }
    }
}

TEST(SlpProbe, GroundStateIsCertified) {
    const auto rho = ComplexMatrix::projector(ground_state(kReference));
    const auto r = slp_probe(kReference, rho, 2000, 5);
    EXPECT_TRUE(r.certified_slp);
    EXPECT_LE(r.best_extraction, 1e-6);
    EXPECT_GE(r.best_extraction, -1e-12);  // identity is always evaluated
    EXPECT_LE(r.evaluations, 2000u);
}

TEST(SlpProbe, FlippedSpinYieldsItsErgotropy) {
    const ModelParams p{1.0, 0.4, 0.0};
    const auto rho = ComplexMatrix::projector(basis_state(4, 3));
    const auto r = slp_probe(p, rho, 3000, 11);
    EXPECT_NEAR(r.best_extraction, 2.0 * p.h_b, 1e-6);
    EXPECT_FALSE(r.certified_slp);
}

TEST(SlpProbe, MeasuredAverageStateIsPassive) {
    const auto g = ComplexMatrix::projector(ground_state(kReference));
    ComplexMatrix avg(4);
    for (const auto& op : measurement_operators()) avg += op * g * op;
    const auto r = slp_probe(kReference, avg, 2000, 13);
    EXPECT_LE(r.best_extraction, 1e-6);
}

TEST(SlpProbe, DeterministicInSeedAndBudget) {
    const auto rho = ComplexMatrix::projector(basis_state(4, 3));
    const auto a = slp_probe(kReference, rho, 600, 17);
    const auto b = slp_probe(kReference, rho, 600, 17);
    EXPECT_EQ(a.best_extraction, b.best_extraction);
    EXPECT_EQ(a.evaluations, b.evaluations);
    EXPECT_EQ(a.best_channel.params, b.best_channel.params);
}

TEST(SlpProbe, NeverExceedsGlobalBound) {
    std::mt19937_64 rng(113);
    for (int i = 0; i < 3; ++i) {
        const auto p = random_params(rng);
        const auto r = slp_probe(p, ComplexMatrix::projector(ground_state(p)), 800, i);
        EXPECT_LE(r.best_extraction, max_extractable_energy(p) + 1e-12);
    }
}

TEST(SlpProbe, BudgetOfOneEvaluatesOnlyIdentity) {
    const auto r = slp_probe(kReference, ComplexMatrix::projector(ground_state(kReference)), 1, 3);
    EXPECT_EQ(r.evaluations, 1u);
    EXPECT_NEAR(r.best_extraction, 0.0, 1e-12);
}

TEST(ActivationGap, Values) {
    EXPECT_NEAR(activation_gap({1.0, 0.4, 0.0}, 500), 0.0, 1e-6);
    EXPECT_NEAR(activation_gap(kReference, 1000), 0.071187394734, 1e-6);
}

TEST(ActivationGap, BoundRisesThenFlattensAcrossGrid) {
    // Unimodal on kappa / h in [0, 1]: rises to a single peak, then sags slightly.
    std::vector<double> bound;
    for (int k = 0; k <= 50; ++k) bound.push_back(max_extractable_energy({1.0, 0.4, k / 50.0}));
    const auto peak = static_cast<std::size_t>(std::max_element(bound.begin(), bound.end()) - bound.begin());
    EXPECT_GT(peak, 25u);
    for (std::size_t i = 1; i <= peak; ++i) EXPECT_GT(bound[i], bound[i - 1]) << i;
    for (std::size_t i = peak + 1; i < bound.size(); ++i) EXPECT_LT(bound[i], bound[i - 1]) << i;
    EXPECT_GT(bound.back(), 0.9 * bound[peak]);
}

}  // namespace
}  // namespace qet
