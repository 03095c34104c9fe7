#pragma once

#include <vector>

#include "commnet/digraph.hpp"
#include "commnet/process.hpp"

namespace commnet {

/// Interface channel names: s0/r0 for single-digit ids, s_10/r_10 beyond.
ChannelName send_channel(unsigned node);
ChannelName receive_channel(unsigned node);
/// Link channel name for an edge: l01, or l_10_2 once an id needs more than
/// one digit.
ChannelName link_channel(unsigned from, unsigned to);

/// Direct broadcast over a shared medium:
///   new m. (*m || s0 -> m || ... || m -> r0 || ...)
/// Nodes must be nonempty and distinct.
ProcessPtr direct_broadcast(const std::vector<unsigned>& nodes);

/// Broadcast via multicast over the given topology: one restricted, duplosed
/// link channel per edge; per node a distributor from its send channel to its
/// outgoing links; per edge a distributor from the link to the receive channel
/// and the follow-up links. Nodes without outgoing edges get an empty-target
/// send distributor (see nodes_without_out_edges for the warning case).
ProcessPtr multicast(const Digraph& g);

}  // namespace commnet
