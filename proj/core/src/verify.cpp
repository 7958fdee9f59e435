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

#include "qet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "qet/hamiltonian.hpp"
#include "qet/passivity.hpp"
#include "qet/protocols.hpp"
#include "qet/random.hpp"

namespace qet {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

// Runs `body`, turning any exception into a failed check.
CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return {name, false, std::string("threw: ") + e.what()};
    }
}

const ModelParams kReference{1.0, 0.4, 0.2};

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
    std::vector<CheckResult> out;
    const ComplexMatrix ana = options.ana_override.value_or(u_ana());

    out.push_back(guarded("unitarity", [&] {
        std::mt19937_64 rng(options.seed);
        double worst = unitarity_residual(ana);
        for (std::size_t i = 0; i < options.random_draws; ++i) {
            const auto p = random_params(rng);
            for (const auto& u : {y_rotation(p), u_prep(p), u_prep_mediated(p), u_rot_v(p), u_diag(p),
                                  u_rot_v(p) * u_diag(p)}) {
                worst = std::max(worst, unitarity_residual(u));
            }
            if (p.kappa > 0.0) {
                const auto fb = optimal_feedback(p);
                worst = std::max({worst, unitarity_residual(fb.plus), unitarity_residual(fb.minus)});
            }
        }
        return CheckResult{"unitarity", worst <= 1e-10, "max ||U^dag U - 1|| = " + sci(worst)};
    }));

    out.push_back(guarded("povm-completeness", [&] {
        const auto ops = measurement_operators();
        const double completeness = max_abs_diff(ops[0] + ops[1], ComplexMatrix::identity(4));
        const double idempotence = std::max(max_abs_diff(ops[0] * ops[0], ops[0]), max_abs_diff(ops[1] * ops[1], ops[1]));
        const double worst = std::max(completeness, idempotence);
        return CheckResult{"povm-completeness", worst <= 1e-12,
                           "sum P - 1: " + sci(completeness) + ", P^2 - P: " + sci(idempotence)};
    }));

    out.push_back(guarded("commutation", [&] {
        std::mt19937_64 rng(options.seed + 1);
        double worst = 0.0;
        for (std::size_t i = 0; i < options.random_draws; ++i) {
            const auto hs = build_hamiltonian(random_params(rng));
            for (const auto& proj : measurement_operators()) {
                worst = std::max({worst, commutator(proj, hs.v).max_abs(), commutator(proj, hs.h_b).max_abs()});
            }
            const auto v3 = embed_hamiltonian(hs, kCircuitRegister).v;
            worst = std::max(worst, commutator(embed(ana, QubitLabel::An, QubitLabel::A, kCircuitRegister), v3).max_abs());
        }
        return CheckResult{"commutation", worst <= 1e-12, "max commutator entry " + sci(worst)};
    }));

    out.push_back(guarded("ground-state-energy", [&] {
        std::mt19937_64 rng(options.seed + 2);
        double worst = 0.0;
        for (std::size_t i = 0; i < 2 * options.random_draws; ++i) {
            const auto p = random_params(rng);
            const auto hs = build_hamiltonian(p);
            const auto g = ground_state(p);
            for (const auto* op : {&hs.total, &hs.h_a, &hs.h_b, &hs.v}) worst = std::max(worst, std::abs(expectation(g, *op)));
            worst = std::max(worst, std::abs(hermitian_eig(hs.total).values.front()));
        }
        return CheckResult{"ground-state-energy", worst <= 1e-9, "max |<g|term|g>|, |min eig H| = " + sci(worst)};
    }));

    out.push_back(guarded("circuit-convention", [&] {
        const auto resolved = resolve_convention(kReference);
        return CheckResult{"circuit-convention", resolved == kResolvedConvention, to_string(resolved)};
    }));

    out.push_back(guarded("equivalence", [&] {
        std::mt19937_64 rng(options.seed + 3);
        double worst = equivalence_report(kReference).max_diff;
        for (std::size_t i = 0; i < options.random_draws; ++i) worst = std::max(worst, equivalence_report(random_params(rng)).max_diff);
        return CheckResult{"equivalence", worst <= 1e-8, "max |rho_B(unitary) - rho_B(minimal)| = " + sci(worst)};
    }));

    out.push_back(guarded("optimality", [&] {
        double worst = 0.0;
        for (double k : {0.05, 0.1, 0.2, 0.5, 1.0}) {
            const ModelParams p{1.0, 0.4, k};
            const double bound = -build_hamiltonian(p).lambda_min;
            worst = std::max(worst, std::abs(run_minimal_qet(p, optimal_feedback(p)).energy_extracted - bound));
            worst = std::max(worst, std::abs(run_unitary_qet(p).energy_extracted - bound));
        }
        return CheckResult{"optimality", worst <= 1e-9, "max |extraction + lambda_min| = " + sci(worst)};
    }));

    out.push_back(guarded("injection-ordering", [&] {
        std::mt19937_64 rng(options.seed + 4);
        double worst = 0.0;
        for (std::size_t i = 0; i < options.random_draws; ++i) {
            const auto p = random_params(rng);
            const auto r = run_minimal_qet(p, optimal_feedback(p));
            worst = std::max(worst, r.energy_extracted - r.injected_energy);
            worst = std::max(worst, max_extractable_energy(p) - injected_energy(p));
        }
        return CheckResult{"injection-ordering", worst <= 1e-12, "max (extracted - injected) = " + sci(worst)};
    }));

    out.push_back(guarded("no-feedback", [&] {
        const auto search = no_feedback_search(kReference, options.no_feedback_samples, options.seed + 5);
        return CheckResult{"no-feedback", search.best_extraction <= 1e-8,
                           "best outcome-blind extraction " + sci(search.best_extraction)};
    }));

    out.push_back(guarded("slp-certification", [&] {
        std::mt19937_64 rng(options.seed + 6);
        double worst = -1.0;
        for (std::size_t i = 0; i < options.slp_draws; ++i) {
            const auto p = i == 0 ? kReference : random_params(rng, 0.1, 2.0, 0.05, 2.0);
            const auto rep = slp_probe(p, ComplexMatrix::projector(ground_state(p)), options.slp_budget, options.seed + i);
            worst = std::max(worst, rep.best_extraction);
        }
        return CheckResult{"slp-certification", worst <= 1e-6, "best local-channel extraction " + sci(worst)};
    }));

    out.push_back(guarded("timing", [&] {
        const auto s2 = timing_check(1.16, 72.27, 69.68, 9.5e-3);
        const double gates[] = {10e-3, 4e-3};
        const auto main_text = timing_check_durations(1.16, gates);
        std::ostringstream detail;
        detail << "t_total " << sci(s2.t_total) << " s vs t_c " << sci(s2.t_c) << " s; t_mu " << sci(main_text.t_total) << " s";
        return CheckResult{"timing", s2.pass && main_text.pass, detail.str()};
    }));

    return out;
}

}  // namespace qet
