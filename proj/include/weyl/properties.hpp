#pragma once

// Seeded property suites over a context: algebra identities that must hold
// exactly for every sampled input.

#include <cstdint>
#include <string>
#include <vector>

#include "weyl/kernels.hpp"
#include "weyl/random_elements.hpp"

namespace weyl {

struct VerifyOptions {
    std::size_t trials = 200;
    std::uint64_t seed = 42;
    Exec exec = Exec::parallel;
    SampleShape shape{};
};

struct SuiteResult {
    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
    /// Violating inputs, verbatim, in trial order.
    std::vector<std::string> violations;
    bool passed() const noexcept { return failures == 0; }
};

/// associativity, theta_homomorphism, lie_axioms, leibniz, commutativity,
/// level_arithmetic, bracket_level_drop, round_trip, derivative_order,
/// f1_central.
std::vector<std::string> suite_names();

/// Inputs are drawn serially from a generator seeded by (seed, suite name),
/// then checked with `exec`; results do not depend on the execution mode.
SuiteResult run_suite(const Context& ctx, const std::string& name, const VerifyOptions& options);

std::vector<SuiteResult> run_suites(const Context& ctx, const std::vector<std::string>& names,
                                    const VerifyOptions& options);

}  // namespace weyl
