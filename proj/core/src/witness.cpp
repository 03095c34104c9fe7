#include "commnet/witness.hpp"

#include <algorithm>

#include "commnet/weak.hpp"

namespace commnet {

namespace {

bool fail(std::string* error, const std::string& msg) {
  if (error) *error = msg;
  return false;
}

}  // namespace

bool replay_witness(const Witness& w, const Lts& left, const Lts& right, std::string* error) {
  if (w.positions.empty()) return fail(error, "witness has no positions");
  const auto& root = w.positions[0];
  if (root.left_state != left.initial || root.right_state != right.initial)
    return fail(error, "root position does not pair the initial states");

  // acyclicity of refutation references
  {
    enum { white, grey, black };
    std::vector<uint8_t> color(w.positions.size(), white);
    std::vector<std::pair<uint32_t, size_t>> stack;  // (position, response cursor)
    for (uint32_t start = 0; start < w.positions.size(); ++start) {
      if (color[start] != white) continue;
      stack.push_back({start, 0});
      color[start] = grey;
      while (!stack.empty()) {
        auto& [pos, cursor] = stack.back();
        if (cursor == w.positions[pos].responses.size()) {
          color[pos] = black;
          stack.pop_back();
          continue;
        }
        uint32_t child = w.positions[pos].responses[cursor++].second;
        if (child >= w.positions.size()) return fail(error, "response references missing position");
        if (color[child] == grey) return fail(error, "refutation references form a cycle");
        if (color[child] == white) {
          color[child] = grey;
          stack.push_back({child, 0});
        }
      }
    }
  }

  auto left_ptr = std::shared_ptr<const Lts>(&left, [](const Lts*) {});
  auto right_ptr = std::shared_ptr<const Lts>(&right, [](const Lts*) {});
  WeakLts wl(left_ptr), wr(right_ptr);

  for (size_t i = 0; i < w.positions.size(); ++i) {
    const auto& pos = w.positions[i];
    if (pos.left_state >= left.num_states || pos.right_state >= right.num_states)
      return fail(error, "position cites an out-of-range state");
    bool attacker_left = pos.attacker == Witness::Side::left;
    WeakLts& atk = attacker_left ? wl : wr;
    WeakLts& def = attacker_left ? wr : wl;
    uint32_t atk_state = attacker_left ? pos.left_state : pos.right_state;
    uint32_t def_state = attacker_left ? pos.right_state : pos.left_state;

    if (!atk.has_weak_move(atk_state, pos.attack, pos.attack_target))
      return fail(error, "position " + std::to_string(i) + ": cited attacker move " +
                             to_string(pos.attack) + " does not exist");

    auto defender_targets = def.weak_targets(def_state, pos.attack);
    if (defender_targets.empty()) {
      if (pos.attack.kind == Label::Kind::tau)
        return fail(error, "position " + std::to_string(i) + ": tau cannot be unanswerable");
      if (!pos.responses.empty())
        return fail(error, "position " + std::to_string(i) + ": final position with responses");
      continue;
    }
    if (pos.responses.size() != defender_targets.size())
      return fail(error, "position " + std::to_string(i) + ": response set differs from the " +
                             "defender's weak targets");
    for (size_t k = 0; k < defender_targets.size(); ++k) {
      const auto& [resp_state, resp_pos] = pos.responses[k];
      if (resp_state != defender_targets[k])
        return fail(error, "position " + std::to_string(i) + ": response set differs from the " +
                               "defender's weak targets");
      const auto& child = w.positions[resp_pos];
      uint32_t want_left = attacker_left ? pos.attack_target : resp_state;
      uint32_t want_right = attacker_left ? resp_state : pos.attack_target;
      if (child.left_state != want_left || child.right_state != want_right)
        return fail(error, "position " + std::to_string(i) + ": refutation pairs wrong states");
    }
  }
  return true;
}

}  // namespace commnet
