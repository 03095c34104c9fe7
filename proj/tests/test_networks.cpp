#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "commnet/digraph.hpp"
#include "commnet/net.hpp"
#include "commnet/networks.hpp"
#include "commnet/parse.hpp"

using namespace commnet;

namespace {

Digraph fig2_topology() {
  Digraph g;
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  g.add_edge(3, 0);
  return g;
}

}  // namespace

TEST_CASE("direct_broadcast over four nodes") {
  auto d = direct_broadcast({0, 1, 2, 3});
  auto expected = parse_process(
      "new m. (*m || s0 -> m || s1 -> m || s2 -> m || s3 -> m"
      " || m -> r0 || m -> r1 || m -> r2 || m -> r3)");
  CHECK(equal(d, expected));
}

TEST_CASE("direct_broadcast single and two nodes") {
  CHECK(equal(direct_broadcast({0}), parse_process("new m. (*m || s0 -> m || m -> r0)")));
  CHECK(equal(direct_broadcast({0, 1}),
              parse_process("new m. (*m || s0 -> m || s1 -> m || m -> r0 || m -> r1)")));
}

TEST_CASE("direct_broadcast rejects bad node lists") {
  CHECK_THROWS(direct_broadcast({}));
  CHECK_THROWS(direct_broadcast({1, 1}));
}

TEST_CASE("multicast over the five-edge ring-with-chords topology") {
  auto m = multicast(fig2_topology());
  auto expected = parse_process(
      "new l01. new l02. new l13. new l23. new l30. ("
      "*l01 || *l02 || *l13 || *l23 || *l30"
      " || s0 => [l01, l02] || s1 => [l13] || s2 => [l23] || s3 => [l30]"
      " || l01 => [r1, l13] || l02 => [r2, l23] || l13 => [r3, l30]"
      " || l23 => [r3, l30] || l30 => [r0, l01, l02])");
  CHECK(equal(m, expected));
}

TEST_CASE("multicast two-node ring") {
  auto m = multicast([] {
    Digraph g;
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    return g;
  }());
  auto expected = parse_process(
      "new l01. new l10. (*l01 || *l10 || s0 => [l01] || s1 => [l10]"
      " || l01 => [r1, l10] || l10 => [r0, l01])");
  CHECK(equal(m, expected));
}

TEST_CASE("multicast degenerate relay: target node with no out-edges") {
  Digraph g;
  g.add_edge(0, 1);
  auto m = multicast(g);
  auto expected = parse_process("new l01. (*l01 || s0 => [l01] || s1 => [] || l01 => [r1])");
  CHECK(equal(m, expected));
  CHECK(nodes_without_out_edges(g) == std::vector<unsigned>{1});
}

TEST_CASE("interfaces: free channels are exactly the node interfaces") {
  std::set<ChannelName> iface{"s0", "s1", "s2", "s3", "r0", "r1", "r2", "r3"};
  CHECK(free_channels(direct_broadcast({0, 1, 2, 3})) == iface);
  CHECK(free_channels(multicast(fig2_topology())) == iface);
}

TEST_CASE("multicast component counts after desugaring") {
  Digraph g = fig2_topology();
  Net net = compile(multicast(g));
  size_t locals = 0;
  for (const auto& p : net.places) locals += p.local;
  CHECK(locals == g.edges.size());
  size_t losers = 0, dups = 0, distributors = 0;
  for (const auto& t : net.transitions) {
    if (t.targets.empty())
      ++losers;
    else if (t.targets.size() == 2 && t.targets[0] == t.source && t.targets[1] == t.source)
      ++dups;
    else
      ++distributors;
  }
  CHECK(losers == g.edges.size());
  CHECK(dups == g.edges.size());
  // one send distributor per node plus one relay distributor per edge; the
  // degenerate empty-target senders count as losers above
  size_t isolated = nodes_without_out_edges(g).size();
  CHECK(distributors + isolated == g.nodes.size() + g.edges.size());
}

TEST_CASE("direct_broadcast is symmetric under node permutation") {
  auto a = normalize(direct_broadcast({0, 1, 2, 3}));
  auto b = normalize(direct_broadcast({3, 1, 0, 2}));
  CHECK(equal(a, b));
}

TEST_CASE("channel naming uses separators beyond single digits") {
  CHECK(send_channel(3) == "s3");
  CHECK(send_channel(10) == "s_10");
  CHECK(receive_channel(12) == "r_12");
  CHECK(link_channel(0, 1) == "l01");
  CHECK(link_channel(10, 2) == "l_10_2");
}

TEST_CASE("strong connectivity") {
  CHECK(is_strongly_connected(fig2_topology()));
  Digraph g;
  g.add_edge(0, 1);
  CHECK_FALSE(is_strongly_connected(g));
  Digraph single;
  single.add_node(7);
  CHECK(is_strongly_connected(single));
  CHECK(is_strongly_connected(Digraph{}));
}

TEST_CASE("digraph file format") {
  auto g = parse_digraph("# topology\nnodes: 5\n0 -> 1 # edge\n1 -> 0\n\n");
  CHECK(g.nodes == std::vector<unsigned>{0, 1, 5});
  CHECK(g.edges == std::vector<std::pair<unsigned, unsigned>>{{0, 1}, {1, 0}});
  CHECK_THROWS(parse_digraph("0 -> 0"));
  CHECK_THROWS(parse_digraph("0 ->"));
  CHECK_THROWS(parse_digraph("zero -> 1"));
}
