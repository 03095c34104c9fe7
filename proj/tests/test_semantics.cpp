#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "commnet/abstraction.hpp"
#include "commnet/explore.hpp"
#include "commnet/networks.hpp"
#include "commnet/parse.hpp"

using namespace commnet;

namespace {

ExploreOptions set_opts(size_t alphabet = 1, uint32_t budget = 1) {
  ExploreOptions o;
  o.alphabet = default_alphabet(alphabet);
  o.injection_budget = budget;
  o.semantics = SemanticsMode::set;
  return o;
}

ExploreOptions exact_opts(size_t alphabet = 1, uint32_t budget = 1, uint32_t cap = 4) {
  ExploreOptions o;
  o.alphabet = default_alphabet(alphabet);
  o.injection_budget = budget;
  o.semantics = SemanticsMode::exact;
  o.capacity_cap = cap;
  return o;
}

Digraph fig2_topology() {
  Digraph g;
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  g.add_edge(3, 0);
  return g;
}

size_t count_label(const Lts& lts, Label::Kind kind) {
  size_t n = 0;
  for (const auto& l : lts.labels) n += l.kind == kind;
  return n;
}

}  // namespace

TEST_CASE("compile: a two-target distributor") {
  Net net = compile(parse_process("a => [b, c]"));
  REQUIRE(net.places.size() == 3);
  for (const auto& p : net.places) CHECK_FALSE(p.local);
  REQUIRE(net.transitions.size() == 1);
  CHECK(net.places[net.transitions[0].source].name == "a");
  std::multiset<std::string> targets;
  for (auto t : net.transitions[0].targets) targets.insert(net.places[t].name);
  CHECK(targets == std::multiset<std::string>{"b", "c"});
}

TEST_CASE("compile: direct broadcast nets have one medium place") {
  Net net = compile(direct_broadcast({0, 1, 2, 3}));
  CHECK(net.places.size() == 9);
  size_t locals = 0;
  for (const auto& p : net.places) locals += p.local;
  CHECK(locals == 1);
  CHECK(net.transitions.size() == 10);

  size_t to_medium = 0, from_medium = 0, losers = 0, dups = 0;
  for (const auto& t : net.transitions) {
    if (t.targets.empty())
      ++losers;
    else if (t.targets.size() == 2 && t.targets[0] == t.source && t.targets[1] == t.source)
      ++dups;
    else if (net.places[t.source].local)
      ++from_medium;
    else
      ++to_medium;
  }
  CHECK(to_medium == 4);
  CHECK(from_medium == 4);
  CHECK(losers == 1);
  CHECK(dups == 1);
}

TEST_CASE("compile: multicast nets") {
  Net net = compile(multicast(fig2_topology()));
  CHECK(net.places.size() == 13);
  size_t locals = 0;
  for (const auto& p : net.places) locals += p.local;
  CHECK(locals == 5);
  CHECK(net.transitions.size() == 19);
}

TEST_CASE("compile: shadowed binders get distinct places") {
  Net net = compile(parse_process("new a. (?a || new a. +a) || a -> b"));
  // one global a, two local a's with uniquified display names
  size_t named_a = 0, locals = 0;
  std::set<std::string> names;
  for (const auto& p : net.places) {
    locals += p.local;
    named_a += p.name == "a";
    CHECK(names.insert(p.name).second);  // display names stay unique
  }
  CHECK(locals == 2);
  CHECK(named_a == 1);
}

TEST_CASE("enabled: bridge with the packet upstream and budgets spent") {
  Net net = compile(parse_process("a -> b"));
  ExploreOptions opts = set_opts();
  Config c = initial_config(net, opts);
  uint32_t a = *net.global_place("a");
  uint32_t b = *net.global_place("b");
  c.marking[a][0] = 1;
  c.budgets[a][0] = 0;

  auto moves = enabled(net, c, opts);
  REQUIRE(moves.size() == 2);
  CHECK(moves[0].first == Label{Label::Kind::out, "a", "p"});
  CHECK(moves[0].second.marking[a][0] == 0);
  CHECK(moves[1].first == Label{Label::Kind::tau, "", ""});
  CHECK(moves[1].second.marking[a][0] == 0);
  CHECK(moves[1].second.marking[b][0] == 1);
}

TEST_CASE("enabled: loser drops and the packet stays observable") {
  Net net = compile(parse_process("?a"));
  ExploreOptions opts = set_opts();
  Config c = initial_config(net, opts);
  uint32_t a = *net.global_place("a");
  c.marking[a][0] = 1;
  c.budgets[a][0] = 0;
  auto moves = enabled(net, c, opts);
  REQUIRE(moves.size() == 2);
  CHECK(moves[0].first.kind == Label::Kind::out);
  CHECK(moves[1].first.kind == Label::Kind::tau);
  CHECK(moves[1].second.marking[a][0] == 0);
}

TEST_CASE("enabled: nothing moves in an exhausted configuration") {
  Net net = compile(parse_process("a -> b || ?c"));
  ExploreOptions opts = set_opts();
  Config c = initial_config(net, opts);
  for (auto& per_place : c.budgets)
    for (auto& v : per_place) v = 0;
  CHECK(enabled(net, c, opts).empty());
}

TEST_CASE("explore: bridge gives the four-state diamond") {
  Lts lts = explore(parse_process("a -> b"), set_opts());
  CHECK(lts.num_states == 4);
  CHECK(lts.num_transitions() == 4);

  // initial: only In(a,p)
  auto init_edges = lts.out_edges(lts.initial);
  REQUIRE(init_edges.size() == 1);
  CHECK(lts.labels[init_edges[0].label] == Label{Label::Kind::in, "a", "p"});

  uint32_t s1 = init_edges[0].target;
  auto s1_edges = lts.out_edges(s1);
  REQUIRE(s1_edges.size() == 2);
  CHECK(lts.labels[s1_edges[0].label] == Label{Label::Kind::out, "a", "p"});
  CHECK(lts.labels[s1_edges[1].label] == Label{Label::Kind::tau, "", ""});
  uint32_t drained = s1_edges[0].target;
  uint32_t delivered = s1_edges[1].target;
  CHECK(lts.out_edges(drained).empty());
  auto dl = lts.out_edges(delivered);
  REQUIRE(dl.size() == 1);
  CHECK(lts.labels[dl[0].label] == Label{Label::Kind::out, "b", "p"});
  CHECK(dl[0].target == drained);

  // b is a pure sink: no In label for it
  CHECK(count_label(lts, Label::Kind::in) == 1);
  CHECK(count_label(lts, Label::Kind::out) == 2);
}

TEST_CASE("explore: stop has one state and no moves") {
  Lts lts = explore(Process::stop(), set_opts());
  CHECK(lts.num_states == 1);
  CHECK(lts.num_transitions() == 0);
}

TEST_CASE("explore: loser alone gives three states") {
  Lts lts = explore(parse_process("?a"), set_opts());
  CHECK(lts.num_states == 3);
  CHECK(lts.num_transitions() == 3);
  // the drop and the observation converge on the spent-and-empty state
  auto init_edges = lts.out_edges(lts.initial);
  REQUIRE(init_edges.size() == 1);
  auto mid = lts.out_edges(init_edges[0].target);
  REQUIRE(mid.size() == 2);
  CHECK(mid[0].target == mid[1].target);
}

TEST_CASE("explore: extra send channels align interfaces") {
  ExploreOptions opts = set_opts();
  opts.extra_send_channels = {"a"};
  Lts lts = explore(Process::stop(), opts);
  CHECK(lts.num_states == 3);  // fresh, injected, observed-and-spent
  CHECK(lts.num_transitions() == 2);
}

TEST_CASE("explore: no In or Out label ever names a local channel") {
  for (const auto& p : {direct_broadcast({0, 1, 2, 3}), multicast(fig2_topology())}) {
    Lts lts = explore(p, set_opts());
    std::set<std::string> locals;
    for (const auto& place : lts.net->places)
      if (place.local) locals.insert(place.name);
    for (const auto& label : lts.labels)
      if (label.kind != Label::Kind::tau) CHECK_FALSE(locals.count(label.channel));
  }
}

TEST_CASE("explore: injection is deterministic per label") {
  Lts lts = explore(multicast(fig2_topology()), set_opts());
  for (uint32_t s = 0; s < lts.num_states; ++s) {
    std::set<uint16_t> seen;
    for (const auto& e : lts.out_edges(s))
      if (lts.labels[e.label].kind == Label::Kind::in) CHECK(seen.insert(e.label).second);
  }
}

TEST_CASE("explore: deterministic across runs") {
  auto p = multicast(fig2_topology());
  Lts a = explore(p, set_opts());
  Lts b = explore(p, set_opts());
  CHECK(a.num_states == b.num_states);
  CHECK(a.row_offsets == b.row_offsets);
  CHECK(a.edge_labels == b.edge_labels);
  CHECK(a.edge_targets == b.edge_targets);
  CHECK(a.state_bytes == b.state_bytes);
}

TEST_CASE("explore: set-semantics state count respects the closed-form bound") {
  for (const char* text : {"a -> b", "?a || +a", "*a || a -> b"}) {
    Lts lts = explore(parse_process(text), set_opts());
    size_t places = lts.net->places.size();
    size_t sends = lts.layout.send_places.size();
    double bound = std::pow(2.0, double(places)) * std::pow(2.0, double(sends));
    CHECK(double(lts.num_states) <= bound);
  }
}

TEST_CASE("explore: exact token accounting per step") {
  auto p = parse_process("*a || a -> b");
  ExploreOptions opts = exact_opts(1, 1, 4);
  opts.dup_budget = 2;
  Lts lts = explore(p, opts);

  std::set<int64_t> tau_deltas;  // |targets| - 1 over the net's transitions
  for (const auto& t : lts.net->transitions)
    tau_deltas.insert(int64_t(t.targets.size()) - 1);

  auto total = [&](uint32_t s) {
    int64_t sum = 0;
    Config c = lts.config_at(s);
    for (const auto& per_place : c.marking)
      for (auto v : per_place) sum += v;
    return sum;
  };
  for (uint32_t s = 0; s < lts.num_states; ++s) {
    for (const auto& e : lts.out_edges(s)) {
      int64_t delta = total(e.target) - total(s);
      switch (lts.labels[e.label].kind) {
        case Label::Kind::in: CHECK(delta == 1); break;
        case Label::Kind::out: CHECK(delta == -1); break;
        case Label::Kind::tau: CHECK(tau_deltas.count(delta)); break;
      }
    }
  }
}

TEST_CASE("explore: capacity errors on unchecked duplication") {
  ExploreOptions opts = exact_opts(1, 1, 1);
  try {
    explore(multicast(fig2_topology()), opts);
    FAIL("expected CapacityExceeded");
  } catch (const ExploreError& e) {
    CHECK(e.kind == ExploreError::Kind::capacity_exceeded);
    CHECK_FALSE(e.channel.empty());
    CHECK(e.packet == "p");
  }
}

TEST_CASE("explore: clamping caps multiplicities instead of failing") {
  ExploreOptions opts = exact_opts(1, 1, 1);
  opts.cap_policy = CapPolicy::clamp;
  Lts lts = explore(parse_process("*a"), opts);
  CHECK(lts.num_states > 0);
  for (uint32_t s = 0; s < lts.num_states; ++s) {
    Config c = lts.config_at(s);
    for (const auto& per_place : c.marking)
      for (auto v : per_place) CHECK(v <= 1);
  }
}

TEST_CASE("explore: state limit") {
  ExploreOptions opts = set_opts(2);
  opts.state_limit = 5;
  CHECK_THROWS_AS(explore(multicast(fig2_topology()), opts), ExploreError);
}

TEST_CASE("validate_abstraction: duplosed link") {
  ExploreOptions exact = exact_opts(1, 1, 8);
  exact.dup_budget = 2;
  auto report = validate_abstraction(parse_process("*a || a -> b"), exact, set_opts(), 4);
  CHECK(report.exact_in_set);
  CHECK(report.set_in_exact);
  CHECK(report.passed());
}

TEST_CASE("validate_abstraction: bridge without duplication is exact") {
  auto report =
      validate_abstraction(parse_process("a -> b"), exact_opts(1, 1, 4), set_opts(), 6);
  CHECK(report.passed());
  CHECK(report.exact_states == report.set_states);
}

TEST_CASE("validate_abstraction: bare duplicator") {
  // with duplication disabled the exact side embeds into the set side, and the
  // report points out the elided duplicator firings
  ExploreOptions frozen = exact_opts(1, 1, 4);
  frozen.dup_budget = 0;
  auto report = validate_abstraction(parse_process("+a"), frozen, set_opts(), 3);
  CHECK(report.exact_in_set);
  CHECK(report.note.find("elides") != std::string::npos);
  // set-side double observation In,Out,Out needs actual duplication headroom
  CHECK_FALSE(report.set_in_exact);
  CHECK(report.counterexample_direction == "set into exact");

  ExploreOptions dup2 = exact_opts(1, 1, 4);
  dup2.dup_budget = 2;
  CHECK(validate_abstraction(parse_process("+a"), dup2, set_opts(), 3).passed());
}

TEST_CASE("validate_abstraction: rejects mismatched alphabets") {
  ExploreOptions set = set_opts(2);
  CHECK_THROWS(validate_abstraction(parse_process("?a"), exact_opts(), set, 3));
}
