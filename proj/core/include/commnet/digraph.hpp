#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "commnet/errors.hpp"

namespace commnet {

/// Directed graph over numeric node ids. No self-loops; edges are kept
/// sorted and unique.
struct Digraph {
  std::vector<unsigned> nodes;                          // sorted, unique
  std::vector<std::pair<unsigned, unsigned>> edges;     // sorted, unique

  void add_node(unsigned id);
  void add_edge(unsigned from, unsigned to);  // throws on self-loop
  bool has_node(unsigned id) const;
  std::vector<unsigned> successors(unsigned id) const;
};

/// Parses the edge-list format: one `i -> j` per line, optional
/// `nodes: 0 1 2` header for isolated nodes, `#` line comments.
Digraph parse_digraph(std::string_view text);
Digraph load_digraph(const std::string& path);

/// True iff every node reaches every other node (vacuously true for a
/// single node or the empty graph).
bool is_strongly_connected(const Digraph& g);

/// Nodes with no outgoing edge. Their sends go nowhere; multicast() still
/// builds them (empty-target distributor), callers may want to warn.
std::vector<unsigned> nodes_without_out_edges(const Digraph& g);

}  // namespace commnet
