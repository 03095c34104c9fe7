#include "commnet/weak.hpp"

#include <algorithm>

namespace commnet {

WeakLts::WeakLts(std::shared_ptr<const Lts> lts) : lts_(std::move(lts)) {}

const std::vector<uint32_t>& WeakLts::tau_closure(uint32_t s) {
  auto it = closures_.find(s);
  if (it != closures_.end()) return it->second;
  std::vector<uint32_t> seen{s};
  std::vector<uint32_t> stack{s};
  std::vector<bool>* dense = nullptr;
  std::vector<bool> visited;
  // dense bitmap pays off once the closure grows
  visited.assign(0, false);
  std::unordered_map<uint32_t, bool> small;
  small[s] = true;
  while (!stack.empty()) {
    uint32_t u = stack.back();
    stack.pop_back();
    for (uint32_t e = lts_->row_offsets[u]; e < lts_->row_offsets[u + 1]; ++e) {
      if (lts_->edge_labels[e] != 0) continue;
      uint32_t v = lts_->edge_targets[e];
      if (dense) {
        if ((*dense)[v]) continue;
        (*dense)[v] = true;
      } else {
        if (small.count(v)) continue;
        small[v] = true;
        if (small.size() > 1024) {
          visited.assign(lts_->num_states, false);
          for (auto& [k, _] : small) visited[k] = true;
          dense = &visited;
        }
      }
      seen.push_back(v);
      stack.push_back(v);
    }
  }
  std::sort(seen.begin(), seen.end());
  return closures_.emplace(s, std::move(seen)).first->second;
}

std::optional<uint16_t> WeakLts::label_id(const Label& label) const {
  for (size_t i = 0; i < lts_->labels.size(); ++i)
    if (lts_->labels[i] == label) return static_cast<uint16_t>(i);
  return std::nullopt;
}

std::vector<uint32_t> WeakLts::weak_targets(uint32_t s, const Label& label) {
  if (label.kind == Label::Kind::tau) return tau_closure(s);
  auto lid = label_id(label);
  if (!lid) return {};
  std::vector<uint32_t> mids;
  for (uint32_t u : tau_closure(s))
    for (uint32_t e = lts_->row_offsets[u]; e < lts_->row_offsets[u + 1]; ++e)
      if (lts_->edge_labels[e] == *lid) mids.push_back(lts_->edge_targets[e]);
  std::sort(mids.begin(), mids.end());
  mids.erase(std::unique(mids.begin(), mids.end()), mids.end());
  std::vector<uint32_t> out;
  for (uint32_t v : mids) {
    const auto& cl = tau_closure(v);
    out.insert(out.end(), cl.begin(), cl.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool WeakLts::has_weak_move(uint32_t s, const Label& label, uint32_t t) {
  auto targets = weak_targets(s, label);
  return std::binary_search(targets.begin(), targets.end(), t);
}

WeakLts saturate(std::shared_ptr<const Lts> lts) { return WeakLts(std::move(lts)); }

WeakLts saturate(const Lts& lts) { return WeakLts(std::make_shared<Lts>(lts)); }

}  // namespace commnet
