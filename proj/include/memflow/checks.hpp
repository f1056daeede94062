// checks.hpp: seeded property suites for the quantifier axioms, the entropic
// inequalities and the decoherence-function evaluators

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace memflow {

struct SuiteResult {
    std::string name;
    int passed{0};
    int total{0};
    double worst_violation{0.0};
    std::vector<std::string> counterexamples; // at most a handful, seed-reproducible

    bool ok() const noexcept { return passed == total; }
};

enum class FaultInjection {
    None,
    // Replaces every quantifier by 1 − 𝔖; used to check that the harness can fail.
    CorruptQuantifier,
};

struct CheckOptions {
    std::uint64_t seed{1};
    int samples{1000};          // instances per quantifier property
    int dephasing_samples{25};  // random parameter sets per Γ property
    double slack{1e-8};
    double mu{0.25};
    FaultInjection fault{FaultInjection::None};
};

// symm, bound, indid, normorto and cpcontra per quantifier; triangle[D], tlikebis,
// tlikeS, tlikeK, b1, b2.
std::vector<SuiteResult> run_quantifier_suites(const CheckOptions& options);

// gamma_origin, gamma_oracle, gamma_temperature, gamma_kappa_linear.
std::vector<SuiteResult> run_dephasing_suites(const CheckOptions& options);

std::vector<SuiteResult> run_all_suites(const CheckOptions& options);

} // namespace memflow
