#pragma once

#include "commnet/explore.hpp"

namespace commnet {

/// Result of empirically validating the saturated set semantics against the
/// exact multiset semantics on one process.
struct AbstractionReport {
  /// Every weak trace of the exact system (up to the depth) is a weak trace
  /// of the set system.
  bool exact_in_set = false;
  /// Every weak trace of the set system (up to the depth) is a weak trace of
  /// the exact system explored with the stated dup budget.
  bool set_in_exact = false;
  uint32_t depth = 0;
  /// dup_budget bound used for the set-side containment (from opts_exact).
  std::optional<uint32_t> dup_bound;
  /// First offending visible-label sequence, when a containment fails.
  std::vector<Label> counterexample;
  std::string counterexample_direction;  // "exact into set" / "set into exact"
  std::string note;                      // e.g. elided duplicator transitions
  uint64_t exact_states = 0;
  uint64_t set_states = 0;

  bool passed() const { return exact_in_set && set_in_exact; }
};

/// Checks, up to `depth` visible steps, that the weak traces of the exact
/// exploration are included in those of the set exploration and vice versa
/// (the set side compared against the exact system with opts_exact.dup_budget
/// as the duplication bound). Both option sets must share the alphabet and
/// budgets.
AbstractionReport validate_abstraction(const ProcessPtr& p, const ExploreOptions& opts_exact,
                                       const ExploreOptions& opts_set, uint32_t depth);

}  // namespace commnet
