#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "commnet/process.hpp"

namespace commnet {

/// Place/transition view of a desugared process: one place per channel (local
/// iff bound by a restriction), one transition per distributor occurrence.
/// Every transition has exactly one source place; restriction structure is
/// flattened, locality being its only residue.
struct Net {
  struct Place {
    ChannelName name;  // display name; globals keep their channel name
    bool local = false;
  };
  struct Transition {
    uint32_t source = 0;
    std::vector<uint32_t> targets;  // multiset, kept sorted
  };

  std::vector<Place> places;
  std::vector<Transition> transitions;

  std::optional<uint32_t> global_place(const ChannelName& name) const;
  /// Adds a global place if absent (used to align interfaces across systems).
  uint32_t ensure_global_place(const ChannelName& name);
  /// Global places some transition consumes from ("send channels").
  std::vector<ChannelName> send_channels() const;
};

Net compile(const ProcessPtr& p);

}  // namespace commnet
