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

#ifndef QET_PASSIVITY_HPP
#define QET_PASSIVITY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "qet/hamiltonian.hpp"
#include "qet/operator.hpp"

namespace qet {

/// A CPTP map on B, parametrized by an isometry from B into B (x) C^r.
///
/// `params` holds the 2r x 2 isometry W row-major as (re, im) pairs; its two
/// columns are Gram-Schmidt orthonormalized before use, and the Kraus
/// operators are the r stacked 2x2 row blocks of W.
struct LocalChannelParams {
    int kraus_rank = 1;
    std::vector<double> params;

    static std::size_t param_count(int kraus_rank) { return 8 * static_cast<std::size_t>(kraus_rank); }
    /// Rank-1 parameters of the identity map.
    static LocalChannelParams identity();

    std::vector<ComplexMatrix> kraus() const;
};

/// sum_i (1 (x) K_i) rho (1 (x) K_i)^dagger on kPairRegister. Throws
/// std::invalid_argument if sum K^dagger K deviates from 1 by more than `tol`.
ComplexMatrix apply_local_channel(const ComplexMatrix& rho, std::span<const ComplexMatrix> kraus, double tol = 1e-9);
ComplexMatrix apply_local_channel(const ComplexMatrix& rho, const LocalChannelParams& channel);

/// -(Tr[H Phi(rho)] - Tr[H rho]) for a channel acting on B.
double channel_extraction(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho, std::span<const ComplexMatrix> kraus);

struct ProbeOptions {
    /// Objective evaluations granted to each simplex run before restarting.
    std::size_t evaluations_per_restart = 500;
    double initial_step = 0.5;
    /// Extraction at or below this certifies passivity.
    double passive_tolerance = 1e-6;
};

struct ProbeReport {
    double best_extraction = 0.0;
    LocalChannelParams best_channel;
    std::size_t evaluations = 0;
    bool certified_slp = false;
};

/// Seeded multistart Nelder-Mead search for the local channel on B that
/// extracts the most energy from `rho0` under the model Hamiltonian. The
/// identity map is always the first evaluation.
ProbeReport slp_probe(const ModelParams& p, const ComplexMatrix& rho0, std::size_t budget, std::uint64_t seed,
                      const ProbeOptions& options = {});

/// max_extractable_energy(p) minus the best unaided extraction from |g><g|.
double activation_gap(const ModelParams& p, std::size_t budget = 2000, std::uint64_t seed = 1);

}  // namespace qet

#endif  // QET_PASSIVITY_HPP
