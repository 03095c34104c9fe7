#pragma once

#include <unordered_map>

#include "commnet/explore.hpp"

namespace commnet {

/// Saturated (weak) view of an Lts: tau-star closure `s => t` plus weak
/// visible steps `s =a=> t` (=> . a . =>). `=>` is reflexive and transitive
/// and contains every strong move. Closures are computed on demand and
/// memoized, so instances are cheap even for large systems; one instance is
/// not safe for concurrent use (create one per thread instead).
class WeakLts {
 public:
  explicit WeakLts(std::shared_ptr<const Lts> lts);

  const Lts& lts() const { return *lts_; }

  /// Sorted tau-star closure of s; always contains s.
  const std::vector<uint32_t>& tau_closure(uint32_t s);

  /// Sorted weak targets: for tau the closure itself, for a visible label the
  /// targets of => . label . =>. A label absent from the system yields {}.
  std::vector<uint32_t> weak_targets(uint32_t s, const Label& label);

  bool has_weak_move(uint32_t s, const Label& label, uint32_t t);

  /// Label id in the underlying Lts, if the label exists there.
  std::optional<uint16_t> label_id(const Label& label) const;

 private:
  std::shared_ptr<const Lts> lts_;
  std::unordered_map<uint32_t, std::vector<uint32_t>> closures_;
};

WeakLts saturate(std::shared_ptr<const Lts> lts);
/// Convenience for small systems; copies the Lts.
WeakLts saturate(const Lts& lts);

}  // namespace commnet
