#pragma once

#include "commnet/explore.hpp"

namespace commnet {

/// Bisimulation-game transcript distinguishing two systems.
///
/// Positions pair a left state with a right state. At each non-final
/// position the attacker plays a weak move (tau or visible) on one side; the
/// responses list the defender's complete weak target set for that label,
/// each refuted by a follow-up position. A final position has no defender
/// response at all: the attacker offers a weak visible move the other side
/// cannot match. Position 0 pairs the initial states.
struct Witness {
  enum class Side : uint8_t { left, right };

  struct Position {
    uint32_t left_state = 0;
    uint32_t right_state = 0;
    Side attacker = Side::left;
    Label attack;
    uint32_t attack_target = 0;
    /// (defender state, refuting position id); sorted by state. Empty iff
    /// the position is final.
    std::vector<std::pair<uint32_t, uint32_t>> responses;
  };

  std::vector<Position> positions;
};

/// Replays a witness against the two systems: position 0 pairs the initials,
/// every cited attacker move exists as a weak move, every response set equals
/// the defender's weak target set, refutation references are acyclic, and
/// final positions use a visible label the defender cannot weakly perform.
/// Returns false and fills `error` (if given) on the first violation.
bool replay_witness(const Witness& w, const Lts& left, const Lts& right,
                    std::string* error = nullptr);

}  // namespace commnet
