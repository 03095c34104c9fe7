#pragma once

#include <optional>

#include "commnet/explore.hpp"
#include "commnet/witness.hpp"

namespace commnet {

struct BisimStats {
  uint64_t states_left = 0;
  uint64_t states_right = 0;
  uint64_t transitions_left = 0;
  uint64_t transitions_right = 0;
  uint64_t reduced_states = 0;  // tau-SCC components (both sides)
  uint64_t blocks = 0;          // final partition size
  uint32_t iterations = 0;
  double wall_ms = 0.0;
  /// Large multi-symbol systems decompose into independent per-symbol
  /// subsystems (no move ever couples two packet symbols and the subsystems
  /// are isomorphic under uniform budgets); when that route is taken the
  /// verdict comes from one representative symbol and this records which.
  bool per_symbol = false;
  std::string checked_symbol;
};

/// Equivalence result. A witness is present iff not equivalent; it replays
/// against the Lts pair carried here (for per-symbol verdicts, the
/// representative single-symbol pair).
struct Verdict {
  bool equivalent = false;
  std::optional<Witness> witness;
  BisimStats stats;
  std::shared_ptr<const Lts> left;
  std::shared_ptr<const Lts> right;
};

/// Decides weak bisimilarity of two explored systems by partition refinement
/// on the saturated transition relations. Works on any label-compatible pair.
Verdict check_weak_bisim(std::shared_ptr<const Lts> left, std::shared_ptr<const Lts> right);

/// Explores p and q under the union of their interfaces (a channel consumed
/// by only one process is still injectable in both) and decides weak
/// bisimilarity. Verdicts are symmetric in p and q.
Verdict check_weak_bisim(const ProcessPtr& p, const ProcessPtr& q, const ExploreOptions& opts);

/// One loser per listed channel, in parallel with p, normalized.
ProcessPtr attach_losers(const ProcessPtr& p, const std::vector<ChannelName>& channels);

/// Weak bisimilarity up to loss in the given channels:
/// check_weak_bisim(attach_losers(p, cs), attach_losers(q, cs)).
Verdict check_up_to_loss(const ProcessPtr& p, const ProcessPtr& q,
                         const std::vector<ChannelName>& channels, const ExploreOptions& opts);

}  // namespace commnet
