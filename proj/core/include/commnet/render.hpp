#pragma once

#include <string>
#include <vector>

#include "commnet/net.hpp"

namespace commnet {

/// Drawing-level view of a communication net: channels as circles (dashed
/// when local) carrying their ?/+/* unreliability marks, remaining
/// distributors as filled boxes with one arc from the source and one per
/// target.
struct RenderNet {
  struct PlaceNode {
    std::string name;
    bool local = false;
    bool lose_mark = false;  // from a (a, []) transition
    bool dup_mark = false;   // from a (a, [a,a]) transition
  };
  struct Box {
    uint32_t source = 0;
    std::vector<uint32_t> targets;  // with multiplicity
  };
  std::vector<PlaceNode> places;
  std::vector<Box> boxes;
};

RenderNet render_net(const ProcessPtr& p);
RenderNet render_net(const Net& net);

/// Deterministic DOT text for the rendered net.
std::string to_dot(const RenderNet& r);

}  // namespace commnet
