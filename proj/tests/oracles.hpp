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

// Test-only oracles. Nothing here may call into the library's eigensolver or
// protocol code: these are the independent routes the tests compare against.

#ifndef QET_TESTS_ORACLES_HPP
#define QET_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>

#ifndef QET_ORACLES_NO_GTEST
#include <gtest/gtest.h>
#endif

#include "qet/operator.hpp"

namespace qet::oracle {

inline double f(double h_a, double h_b, double kappa) {
    return 1.0 / std::sqrt(4.0 * kappa * kappa / ((h_a + h_b) * (h_a + h_b)) + 1.0);
}

/// Smaller root of a real symmetric 2x2 [[a, b], [b, d]] by the quadratic formula.
inline double min_eig_2x2(double a, double b, double d) {
    const double mean = 0.5 * (a + d);
    const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
    return mean - half_gap;
}

/// Most negative eigenvalue of H_B + V. In the |ab> basis the operator splits
/// into two 2x2 blocks, {|00>,|11>} and {|01>,|10>}, each diagonalized directly.
inline double lambda_min(double h_a, double h_b, double kappa) {
    const double ff = f(h_a, h_b, kappa);
    const double c = 4.0 * kappa * kappa / (h_a + h_b) * ff;
    const double e_b0 = -h_b + h_b * ff + c;  // B in |0>
    const double e_b1 = h_b + h_b * ff + c;   // B in |1>
    const double even = min_eig_2x2(e_b0, 2.0 * kappa, e_b1);
    const double odd = min_eig_2x2(e_b1, 2.0 * kappa, e_b0);
    return std::min(even, odd);
}

#ifndef QET_ORACLES_NO_GTEST
inline void expect_matrix_near(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    ASSERT_EQ(a.dim(), b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            EXPECT_NEAR(std::abs(a(i, j) - b(i, j)), 0.0, tol) << "entry (" << i << "," << j << ")";
        }
    }
}
#endif

}  // namespace qet::oracle

#endif  // QET_TESTS_ORACLES_HPP
