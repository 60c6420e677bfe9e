#pragma once

#include <cstdint>

#include "rwl/report.hpp"

namespace rwl {

/// Exit codes of the verify driver, one per suite.
enum SuiteExit : int {
  kExitFramework = 1,
  kExitFunceq = 2,
  kExitSaturation = 3,
  kExitScenario = 4,
  kExitUsage = 64,
};

/// Record layer, refinement, continuation and profile checks.
[[nodiscard]] RunReport run_framework_suite(std::uint64_t seed);
/// Functional equation, counterexample, Cauchy scaffold, dense extension.
[[nodiscard]] RunReport run_funceq_suite(std::uint64_t seed);
/// Subset sums and density certificates.
[[nodiscard]] RunReport run_saturation_suite(std::uint64_t seed);
/// Spin, normalization, coarse-record demo and the built-in scenario files.
[[nodiscard]] RunReport run_scenario_suite(std::uint64_t seed);

/// All four suites, run concurrently; the report lists them in the order above.
/// Each suite draws from its own stream derived from `seed`.
[[nodiscard]] VerifyReport run_verify(std::uint64_t seed, bool concurrent = true);

}  // namespace rwl
