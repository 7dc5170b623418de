#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace padx::acceptance {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

constexpr std::uint64_t kDefaultSeed = 20240611;

/// Runs the nine end-to-end checks. Each one recomputes its expected
/// values by a separate route (exact rationals, direct sums, closed forms).
std::vector<CriterionResult> run_all(std::uint64_t seed = kDefaultSeed);

CriterionResult lebras_valuations();
CriterionResult positive_type_facts(std::uint64_t seed);
CriterionResult kedlaya_identity(std::uint64_t seed);
CriterionResult equivalence(std::uint64_t seed);
CriterionResult operator_algebra(std::uint64_t seed);
CriterionResult b_recursion(std::uint64_t seed);
CriterionResult sufficient_radius(std::uint64_t seed);
CriterionResult divergence(std::uint64_t seed);
CriterionResult probe_consistency(std::uint64_t seed);

}  // namespace padx::acceptance
