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

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

namespace qet {

namespace {

constexpr double kExhausted = 1e300;

StateVector isometry_column(std::span<const double> params, int rank, std::size_t col) {
    const std::size_t rows = 2 * static_cast<std::size_t>(rank);
    StateVector v(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t k = 2 * (r * 2 + col);
        v[r] = Complex(params[k], params[k + 1]);
    }
    return v;
}

struct Objective {
    const ComplexMatrix* hamiltonian;
    const ComplexMatrix* rho;
    int rank;
    std::size_t budget;
    std::size_t* evaluations;
    double* best;
    LocalChannelParams* best_channel;

    double extraction(std::span<const double> params) {
        LocalChannelParams ch{rank, std::vector<double>(params.begin(), params.end())};
        const auto kraus = ch.kraus();
        const double e = channel_extraction(*hamiltonian, *rho, kraus);
        ++*evaluations;
        if (e > *best) {
            *best = e;
            *best_channel = std::move(ch);
        }
        return e;
    }
};

double gsl_objective(const gsl_vector* x, void* data) {
    auto* obj = static_cast<Objective*>(data);
    if (*obj->evaluations >= obj->budget) return kExhausted;
    std::vector<double> params(x->size);
    for (std::size_t i = 0; i < x->size; ++i) params[i] = gsl_vector_get(x, i);
    return -obj->extraction(params);
}

struct VectorDeleter {
    void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
    void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

}  // namespace

LocalChannelParams LocalChannelParams::identity() {
    // W = [[1, 0], [0, 1]]
    return {1, {1, 0, 0, 0, 0, 0, 1, 0}};
}

std::vector<ComplexMatrix> LocalChannelParams::kraus() const {
    if (kraus_rank < 1 || kraus_rank > 4) throw std::invalid_argument("LocalChannelParams: Kraus rank must be in 1..4");
    if (params.size() != param_count(kraus_rank)) throw std::invalid_argument("LocalChannelParams: wrong parameter count");

    auto c0 = isometry_column(params, kraus_rank, 0);
    auto c1 = isometry_column(params, kraus_rank, 1);
    const std::size_t rows = c0.size();
    auto normalize_or_basis = [&](StateVector& v, std::size_t fallback) {
        const double n = norm(v);
        if (n < 1e-12) {
            v = basis_state(rows, fallback);
        } else {
            for (auto& z : v) z /= n;
        }
    };
    normalize_or_basis(c0, 0);
    const Complex proj = inner(c0, c1);
    for (std::size_t r = 0; r < rows; ++r) c1[r] -= proj * c0[r];
    if (norm(c1) < 1e-12) {
        // Any vector orthogonal to c0 completes the isometry.
        c1 = basis_state(rows, std::abs(c0[1]) < 0.5 ? 1 : 0);
        const Complex p2 = inner(c0, c1);
        for (std::size_t r = 0; r < rows; ++r) c1[r] -= p2 * c0[r];
    }
    normalize_or_basis(c1, 1);

    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(kraus_rank));
    for (int i = 0; i < kraus_rank; ++i) {
        ComplexMatrix k(2);
        for (std::size_t r = 0; r < 2; ++r) {
            k(r, 0) = c0[2 * static_cast<std::size_t>(i) + r];
            k(r, 1) = c1[2 * static_cast<std::size_t>(i) + r];
        }
        out.push_back(std::move(k));
    }
    return out;
}

ComplexMatrix apply_local_channel(const ComplexMatrix& rho, std::span<const ComplexMatrix> kraus, double tol) {
    if (rho.dim() != 4) throw std::invalid_argument("apply_local_channel: expected a two-qubit state");
    if (kraus.empty()) throw std::invalid_argument("apply_local_channel: empty Kraus set");
    ComplexMatrix completeness(2);
    for (const auto& k : kraus) {
        if (k.dim() != 2) throw std::invalid_argument("apply_local_channel: Kraus operators must be 2x2");
        completeness += k.adjoint() * k;
    }
    if (max_abs_diff(completeness, ComplexMatrix::identity(2)) > tol) {
        throw std::invalid_argument("apply_local_channel: Kraus operators are not trace preserving");
    }
    ComplexMatrix out(4);
    for (const auto& k : kraus) out += conjugate(embed(k, QubitLabel::B, kPairRegister), rho);
    return out;
}

ComplexMatrix apply_local_channel(const ComplexMatrix& rho, const LocalChannelParams& channel) {
    const auto kraus = channel.kraus();
    return apply_local_channel(rho, kraus);
}

double channel_extraction(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho, std::span<const ComplexMatrix> kraus) {
    return -(expectation(apply_local_channel(rho, kraus), hamiltonian) - expectation(rho, hamiltonian));
}

ProbeReport slp_probe(const ModelParams& p, const ComplexMatrix& rho0, std::size_t budget, std::uint64_t seed,
                      const ProbeOptions& options) {
    if (budget < 1) throw std::invalid_argument("slp_probe: budget must be at least 1");
    if (rho0.dim() != 4 || !rho0.is_density_matrix(1e-9)) {
        throw std::invalid_argument("slp_probe: initial state is not a two-qubit density matrix");
    }
    const auto hamiltonian = build_hamiltonian(p).total;

    ProbeReport report;
    double best = -std::numeric_limits<double>::infinity();
    Objective obj{&hamiltonian, &rho0, 1, budget, &report.evaluations, &best, &report.best_channel};
    obj.extraction(LocalChannelParams::identity().params);

    gsl_set_error_handler_off();
    for (std::uint64_t restart = 0; report.evaluations < budget; ++restart) {
        const std::size_t evaluations_before = report.evaluations;
        const int rank = static_cast<int>(restart % 4) + 1;
        const std::size_t n = LocalChannelParams::param_count(rank);
        std::seed_seq seq{seed, restart};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> gauss(0.0, 1.0);

        std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n));
        std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(n));
        for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x.get(), i, gauss(rng));
        gsl_vector_set_all(step.get(), options.initial_step);

        obj.rank = rank;
        obj.budget = std::min(budget, report.evaluations + options.evaluations_per_restart);
        gsl_multimin_function fn{&gsl_objective, n, &obj};
        std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> minimizer(
            gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
        if (gsl_multimin_fminimizer_set(minimizer.get(), &fn, x.get(), step.get()) != GSL_SUCCESS) break;
        while (report.evaluations < obj.budget) {
            if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
            if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(minimizer.get()), 1e-12) == GSL_SUCCESS) break;
        }
        if (report.evaluations == evaluations_before) break;
    }
    report.best_extraction = best;
    report.certified_slp = best <= options.passive_tolerance;
    return report;
}

double activation_gap(const ModelParams& p, std::size_t budget, std::uint64_t seed) {
    const auto rho = ComplexMatrix::projector(ground_state(p));
    return max_extractable_energy(p) - slp_probe(p, rho, budget, seed).best_extraction;
}

}  // namespace qet
