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

#ifndef QET_VERIFY_HPP
#define QET_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qet/operator.hpp"

namespace qet {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 20240229;
    std::size_t random_draws = 50;
    std::size_t slp_budget = 2000;
    std::size_t slp_draws = 3;
    std::size_t no_feedback_samples = 1000;
    /// Replaces the fixed U_AnA in every check that uses it; negative-control hook.
    std::optional<ComplexMatrix> ana_override;
};

/// Runs every invariant suite of the library; each entry names one invariant.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace qet

#endif  // QET_VERIFY_HPP
