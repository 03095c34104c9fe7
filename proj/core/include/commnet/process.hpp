#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace commnet {

/// Channels are identified by name: a nonempty string over [A-Za-z0-9_].
/// Names compare by exact string equality; a restricted channel shadows any
/// outer channel of the same name.
using ChannelName = std::string;

bool is_valid_channel_name(const ChannelName& name);

class Process;
using ProcessPtr = std::shared_ptr<const Process>;

/// Immutable AST of the communication language.
///
/// Core constructs: stop, parallel composition, restriction and the
/// distributor `a => [b1,...,bn]`. Bridges `a -> b`, losers `?a`,
/// duplicators `+a` and duplosers `*a` are sugar over distributors
/// (see desugar()).
class Process {
 public:
  enum class Kind { stop, par, restriction, distribute, bridge, lose, dup, duplose };

  Kind kind() const { return kind_; }

  /// Source channel (distribute/bridge/lose/dup/duplose) or bound channel (restriction).
  const ChannelName& channel() const { return channel_; }
  /// Bridge target.
  const ChannelName& target() const { return targets_.front(); }
  /// Distributor targets; may be empty ("consume and discard").
  const std::vector<ChannelName>& targets() const { return targets_; }
  /// Parallel components; may be empty (identified with stop by normalize()).
  const std::vector<ProcessPtr>& children() const { return children_; }
  /// Restriction body.
  const ProcessPtr& body() const { return children_.front(); }

  static ProcessPtr stop();
  static ProcessPtr par(std::vector<ProcessPtr> children);
  static ProcessPtr restriction(ChannelName channel, ProcessPtr body);
  static ProcessPtr distribute(ChannelName source, std::vector<ChannelName> targets);
  static ProcessPtr bridge(ChannelName source, ChannelName target);
  static ProcessPtr lose(ChannelName channel);
  static ProcessPtr dup(ChannelName channel);
  static ProcessPtr duplose(ChannelName channel);

 protected:
  Process(Kind kind, ChannelName channel, std::vector<ChannelName> targets,
          std::vector<ProcessPtr> children)
      : kind_(kind),
        channel_(std::move(channel)),
        targets_(std::move(targets)),
        children_(std::move(children)) {}

 private:
  Kind kind_ = Kind::stop;
  ChannelName channel_;
  std::vector<ChannelName> targets_;
  std::vector<ProcessPtr> children_;
};

bool equal(const ProcessPtr& a, const ProcessPtr& b);

/// Pretty-print in the concrete grammar; parse(to_string(p)) == p up to normalization.
std::string to_string(const ProcessPtr& p);

/// Rewrites sugar into the core constructs:
///   a -> b  becomes a => [b]
///   ?a      becomes a => []
///   +a      becomes a => [a,a]
///   *a      becomes a => [] || a => [a,a]
ProcessPtr desugar(const ProcessPtr& p);

/// Structural normal form that keeps channel names: desugars, flattens nested
/// parallel compositions, deletes stop components, and sorts parallel
/// components by an alpha-invariant canonical key. Used by the rewriting
/// engine, which must preserve user-visible names.
ProcessPtr flatten(const ProcessPtr& p);

/// Full normal form: flatten() plus canonical renaming of restricted channels
/// (innermost-first indexing `_0, _1, ...`, skipping names free in the term).
/// Idempotent; alpha-equivalent terms get identical normal forms.
ProcessPtr normalize(const ProcessPtr& p);

/// Channels occurring in p that are not bound by an enclosing restriction.
std::set<ChannelName> free_channels(const ProcessPtr& p);

/// Alpha-invariant canonical key. Bound channels render as de Bruijn-style
/// indices, so the key is stable under renaming of restricted channels; the
/// total order on keys is the order used for sorting parallel components.
std::string canonical_key(const ProcessPtr& p);

}  // namespace commnet
