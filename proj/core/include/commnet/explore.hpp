#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "commnet/errors.hpp"
#include "commnet/net.hpp"

namespace commnet {

enum class SemanticsMode : uint8_t { set, exact };
enum class CapPolicy : uint8_t { error, clamp };

/// Transition label. In/Out labels always name global channels; tau has
/// empty channel and symbol.
struct Label {
  enum class Kind : uint8_t { tau = 0, in = 1, out = 2 };
  Kind kind = Kind::tau;
  ChannelName channel;
  std::string symbol;

  bool operator==(const Label&) const = default;
  bool operator<(const Label& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (channel != o.channel) return channel < o.channel;
    return symbol < o.symbol;
  }
};

std::string to_string(const Label& label);

struct ExploreOptions {
  /// Packet alphabet (nonempty; explore sorts and dedupes a copy).
  std::vector<std::string> alphabet;
  /// Injections remaining per (send channel, packet) in the initial state.
  uint32_t injection_budget = 1;
  SemanticsMode semantics = SemanticsMode::set;
  /// Exact semantics: max multiplicity per (channel, packet).
  uint32_t capacity_cap = 4;
  CapPolicy cap_policy = CapPolicy::error;
  /// Exact semantics: optional global budget of net-increasing firings.
  std::optional<uint32_t> dup_budget;
  uint64_t state_limit = 10'000'000;
  /// Extra channels treated as part of the interface (injectable, and their
  /// global places are created if missing). Used to compare systems under the
  /// union of their interfaces.
  std::vector<ChannelName> extra_send_channels;
};

/// "p" / "p","q" for sizes one and two, else p0..p{n-1}.
std::vector<std::string> default_alphabet(size_t n);

/// Dynamic state of a net: marking plus injection budgets.
struct Config {
  /// marking[place][symbol]: occurrence count (0/1 under set semantics).
  std::vector<std::vector<uint32_t>> marking;
  /// budgets[place][symbol]: remaining injections; empty for non-send places.
  std::vector<std::vector<uint32_t>> budgets;
  /// Remaining net-increasing firings (exact semantics with dup_budget only).
  std::optional<uint32_t> dup_remaining;

  bool operator==(const Config&) const = default;
};

namespace detail {
/// Packed-state layout; exposed so Lts can decode its states.
struct StateLayout {
  uint32_t num_places = 0;
  uint32_t num_symbols = 0;
  bool exact = false;
  bool has_dup_budget = false;
  uint32_t marking_bytes = 0;
  uint32_t budget_offset = 0;
  uint32_t dup_offset = 0;
  uint32_t width = 0;
  std::vector<uint32_t> send_places;  // place ids with budget slots, label order
};
}  // namespace detail

/// Explored finite labeled transition system. States are packed configs in
/// discovery (BFS) order; edges are stored per source state.
struct Lts {
  std::shared_ptr<const Net> net;    // interface-extended net that was explored
  ExploreOptions options;            // normalized copy
  std::vector<Label> labels;         // label id -> label; id 0 is tau
  uint32_t initial = 0;
  uint32_t num_states = 0;
  std::vector<uint32_t> row_offsets;  // size num_states + 1
  std::vector<uint16_t> edge_labels;
  std::vector<uint32_t> edge_targets;
  std::vector<uint8_t> state_bytes;
  detail::StateLayout layout;

  uint64_t num_transitions() const { return edge_targets.size(); }
  const uint8_t* state_data(uint32_t s) const { return state_bytes.data() + size_t(s) * layout.width; }
  Config config_at(uint32_t s) const;

  struct Edge {
    uint16_t label;
    uint32_t target;
  };
  /// Outgoing edges of s, in generation order.
  std::vector<Edge> out_edges(uint32_t s) const;
};

/// Initial configuration: empty marking, full budgets.
Config initial_config(const Net& net, const ExploreOptions& opts);

/// All moves enabled in c: injections (per send channel and packet with
/// remaining budget), observations (per global channel and present packet),
/// and transition firings. Order is deterministic.
std::vector<std::pair<Label, Config>> enabled(const Net& net, const Config& c,
                                              const ExploreOptions& opts);

/// Exhaustive deterministic closure of `enabled` from the initial config.
/// Throws ExploreError on capacity (exact, error policy) or state-limit hits.
Lts explore(const Net& net, const ExploreOptions& opts);
Lts explore(const ProcessPtr& p, const ExploreOptions& opts);

}  // namespace commnet
