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

#ifndef QET_RANDOM_HPP
#define QET_RANDOM_HPP

#include <cstddef>
#include <random>

#include "qet/hamiltonian.hpp"
#include "qet/operator.hpp"

namespace qet {

/// h_A, h_B uniform in [h_lo, h_hi], kappa uniform in [k_lo, k_hi].
inline ModelParams random_params(std::mt19937_64& rng, double h_lo = 0.1, double h_hi = 2.0, double k_lo = 0.0,
                                 double k_hi = 2.0) {
    std::uniform_real_distribution<double> h(h_lo, h_hi);
    std::uniform_real_distribution<double> k(k_lo, k_hi);
    ModelParams p;
    p.h_a = h(rng);
    p.h_b = h(rng);
    p.kappa = k(rng);
    return p;
}

/// Haar-random unitary via Gram-Schmidt on a complex Gaussian matrix.
inline ComplexMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<StateVector> cols(dim, StateVector(dim));
    for (auto& c : cols) {
        for (auto& z : c) z = Complex(g(rng), g(rng));
    }
    for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            const Complex proj = inner(cols[j], cols[k]);
            for (std::size_t i = 0; i < dim; ++i) cols[k][i] -= proj * cols[j][i];
        }
        const double n = norm(cols[k]);
        for (auto& z : cols[k]) z /= n;
    }
    ComplexMatrix u(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t k = 0; k < dim; ++k) u(i, k) = cols[k][i];
    }
    return u;
}

/// G G^dagger / Tr(G G^dagger) for a complex Gaussian G: full rank, generic spectrum.
inline ComplexMatrix random_density_matrix(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
    }
    auto rho = m * m.adjoint();
    return Complex(1.0 / rho.trace().real()) * rho;
}

}  // namespace qet

#endif  // QET_RANDOM_HPP
