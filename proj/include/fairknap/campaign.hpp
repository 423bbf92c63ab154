#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fairknap/forge.hpp"
#include "fairknap/greedy.hpp"

namespace fairknap {

// Randomized property campaigns: generate -> solve -> brute-force verify (or
// oracle-check). Each trial is seeded by (campaign seed, trial index), so
// campaigns are reproducible and trials are independent.

enum class Suite {
  theorem1,    // general instances -> EF2
  theorem2,    // proportional instances -> EF1
  theorem3,    // equal-size instances -> EF1
  theorem4,    // cardinality instances -> EF1 + prefix-size structure
  theorem5,    // agent-specific sizes -> EF2
  lemmas,      // envy-count structure oracles
  appendix_a,  // integerize + density perturbation pipeline
};

std::optional<Suite> suite_from_name(std::string_view name);
std::string_view suite_name(Suite suite);

struct CampaignResult {
  int trials = 0;
  int passed = 0;
  int failed = 0;
  int skipped = 0;  // enumeration cap hit inside the trial
  int first_failed_trial = -1;
  std::string first_failure;         // reason text, empty when failed == 0
  std::string first_counterexample;  // instance JSON, empty when failed == 0

  bool ok() const { return failed == 0; }
};

CampaignResult run_campaign(Suite suite, int trials, std::uint64_t seed);

/// Greedy ef_count against the exhaustive oracle on random bundle pairs
/// with |Y| <= 12.
CampaignResult run_efcount_equivalence(int trials, std::uint64_t seed);

/// Solver selection-structure checks quantified over all valid index pairs,
/// on the same instances the theorem1 suite draws for (trials, seed).
CampaignResult run_selection_properties(int trials, std::uint64_t seed);

// Per-output structural checks (also used by tests). Each returns true when
// the property holds; on failure *why describes the first violation.
bool check_proposition1(const GreedyResult& result, const Instance& inst,
                        std::string* why = nullptr);
bool check_proposition2(const GreedyResult& result, const Instance& inst,
                        std::string* why = nullptr);
bool check_sigma_size_monotone(const GreedyResult& result, const Instance& inst,
                               std::string* why = nullptr);
bool check_prefix_size_round_robin(const GreedyResult& result, const Instance& inst,
                                   std::string* why = nullptr);

}  // namespace fairknap
