#include "commnet/networks.hpp"

#include <algorithm>
#include <set>

namespace commnet {

ChannelName send_channel(unsigned node) {
  return node < 10 ? "s" + std::to_string(node) : "s_" + std::to_string(node);
}

ChannelName receive_channel(unsigned node) {
  return node < 10 ? "r" + std::to_string(node) : "r_" + std::to_string(node);
}

ChannelName link_channel(unsigned from, unsigned to) {
  if (from < 10 && to < 10) return "l" + std::to_string(from) + std::to_string(to);
  return "l_" + std::to_string(from) + "_" + std::to_string(to);
}

ProcessPtr direct_broadcast(const std::vector<unsigned>& nodes) {
  if (nodes.empty()) throw Error("direct_broadcast: no nodes");
  std::set<unsigned> seen;
  for (unsigned n : nodes)
    if (!seen.insert(n).second)
      throw Error("direct_broadcast: duplicate node id " + std::to_string(n));
  const ChannelName medium = "m";
  std::vector<ProcessPtr> parts;
  parts.push_back(Process::duplose(medium));
  for (unsigned n : nodes) parts.push_back(Process::bridge(send_channel(n), medium));
  for (unsigned n : nodes) parts.push_back(Process::bridge(medium, receive_channel(n)));
  return Process::restriction(medium, Process::par(std::move(parts)));
}

ProcessPtr multicast(const Digraph& g) {
  if (g.nodes.empty()) throw Error("multicast: empty topology");
  std::vector<ProcessPtr> parts;
  // duplosers on every link channel
  for (const auto& [i, j] : g.edges) parts.push_back(Process::duplose(link_channel(i, j)));
  // per node: send channel feeds the outgoing links
  for (unsigned i : g.nodes) {
    std::vector<ChannelName> outs;
    for (unsigned j : g.successors(i)) outs.push_back(link_channel(i, j));
    parts.push_back(Process::distribute(send_channel(i), std::move(outs)));
  }
  // per edge: link delivers to the receiver and relays to its follow-up links
  for (const auto& [i, j] : g.edges) {
    std::vector<ChannelName> outs;
    outs.push_back(receive_channel(j));
    for (unsigned k : g.successors(j)) outs.push_back(link_channel(j, k));
    parts.push_back(Process::distribute(link_channel(i, j), std::move(outs)));
  }
  ProcessPtr body = Process::par(std::move(parts));
  // wrap restrictions innermost-last so the first edge's link is outermost
  for (auto it = g.edges.rbegin(); it != g.edges.rend(); ++it)
    body = Process::restriction(link_channel(it->first, it->second), std::move(body));
  return body;
}

}  // namespace commnet
