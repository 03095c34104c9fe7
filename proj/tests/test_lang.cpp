#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "commnet/parse.hpp"
#include "commnet/process.hpp"
#include "support/random_process.hpp"

using namespace commnet;

TEST_CASE("parse: stop process") {
  CHECK(equal(parse_process("0"), Process::stop()));
}

TEST_CASE("parse: bridge") {
  CHECK(equal(parse_process("s0 -> m"), Process::bridge("s0", "m")));
}

TEST_CASE("parse: restricted one-node medium") {
  auto p = parse_process("new m. (*m || s0 -> m || m -> r0)");
  auto expected = Process::restriction(
      "m", Process::par({Process::duplose("m"), Process::bridge("s0", "m"),
                         Process::bridge("m", "r0")}));
  CHECK(equal(p, expected));
}

TEST_CASE("parse: parallel composition is flat and paren-insensitive") {
  auto flat = parse_process("?a || +b || *c");
  REQUIRE(flat->kind() == Process::Kind::par);
  CHECK(flat->children().size() == 3);
  CHECK(equal(parse_process("(?a || +b) || *c"), flat));
  CHECK(equal(parse_process("?a || (+b || *c)"), flat));
  CHECK(equal(parse_process("((?a) || ((+b || *c)))"), flat));
}

TEST_CASE("parse: new extends to the rest of the enclosing group") {
  auto p = parse_process("?a || new b. +b || ?c");
  REQUIRE(p->kind() == Process::Kind::par);
  REQUIRE(p->children().size() == 2);
  CHECK(p->children()[1]->kind() == Process::Kind::restriction);
  auto body = p->children()[1]->body();
  REQUIRE(body->kind() == Process::Kind::par);
  CHECK(body->children().size() == 2);

  auto q = parse_process("?a || (new b. +b) || ?c");
  REQUIRE(q->kind() == Process::Kind::par);
  CHECK(q->children().size() == 3);
}

TEST_CASE("parse: distributors, empty target list") {
  auto p = parse_process("a => [b1, b2]");
  CHECK(p->kind() == Process::Kind::distribute);
  CHECK(p->targets() == std::vector<ChannelName>{"b1", "b2"});
  auto empty = parse_process("a => []");
  CHECK(empty->targets().empty());
}

TEST_CASE("parse: comments and whitespace") {
  auto p = parse_process("# heading\n  ?a ||\n  +b  # trailing\n");
  REQUIRE(p->kind() == Process::Kind::par);
  CHECK(p->children().size() == 2);
}

TEST_CASE("parse: errors carry line and column") {
  try {
    parse_process("?a ||\n  -> b");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 3);
  }
  CHECK_THROWS_AS(parse_process("a -> "), ParseError);
  CHECK_THROWS_AS(parse_process("a => b"), ParseError);
  CHECK_THROWS_AS(parse_process("a"), ParseError);       // bare channel is not a process
  CHECK_THROWS_AS(parse_process("0 0"), ParseError);     // trailing input
  CHECK_THROWS_AS(parse_process("new . 0"), ParseError);
}

TEST_CASE("desugar: unary distributor is a bridge") {
  CHECK(equal(desugar(Process::bridge("a", "b")), Process::distribute("a", {"b"})));
}

TEST_CASE("desugar: duploser is a loser beside a duplicator") {
  auto d = desugar(Process::duplose("m"));
  auto expected = Process::par(
      {Process::distribute("m", {}), Process::distribute("m", {"m", "m"})});
  CHECK(equal(d, expected));
}

TEST_CASE("desugar: stop is a fixed point") {
  CHECK(equal(desugar(Process::stop()), Process::stop()));
}

TEST_CASE("desugar: loser and duplicator") {
  CHECK(equal(desugar(Process::lose("a")), Process::distribute("a", {})));
  CHECK(equal(desugar(Process::dup("a")), Process::distribute("a", {"a", "a"})));
}

TEST_CASE("desugar preserves free channels (random terms)") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto p = commnet::testing::random_process(rng);
    CHECK(free_channels(p) == free_channels(desugar(p)));
  }
}

TEST_CASE("normalize: unit law") {
  auto p = parse_process("a -> b");
  CHECK(equal(normalize(Process::par({p, Process::stop()})), normalize(p)));
  CHECK(equal(normalize(Process::par({})), Process::stop()));
}

TEST_CASE("normalize: flattens and sorts") {
  auto a = parse_process("a -> b");
  auto b = parse_process("b -> c");
  auto c = parse_process("c -> d");
  auto nested = Process::par({Process::par({a, b}), c});
  auto n = normalize(nested);
  REQUIRE(n->kind() == Process::Kind::par);
  CHECK(n->children().size() == 3);
  CHECK(equal(n, normalize(Process::par({c, b, a}))));
}

TEST_CASE("normalize: alpha-equivalent restrictions get identical normal forms") {
  auto p = Process::restriction("a", Process::bridge("a", "b"));
  auto q = Process::restriction("c", Process::bridge("c", "b"));
  CHECK(equal(normalize(p), normalize(q)));
}

TEST_CASE("normalize: canonical names avoid capturing free channels") {
  auto p = parse_process("new a. (a -> _0)");
  auto n = normalize(p);
  REQUIRE(n->kind() == Process::Kind::restriction);
  CHECK(n->channel() != "_0");
  CHECK(free_channels(n) == std::set<ChannelName>{"_0"});
}

TEST_CASE("normalize: idempotent and AC-invariant (random terms)") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto p = commnet::testing::random_process(rng);
    auto q = commnet::testing::random_process(rng);
    auto n = normalize(p);
    CHECK(equal(normalize(n), n));
    CHECK(equal(normalize(Process::par({p, q})), normalize(Process::par({q, p}))));
  }
}

TEST_CASE("round trip: parse of pretty-print is the identity up to normalization") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    auto p = commnet::testing::random_process(rng);
    auto back = parse_process(to_string(p));
    CHECK(equal(normalize(back), normalize(p)));
  }
}

TEST_CASE("free_channels examples") {
  CHECK(free_channels(Process::stop()).empty());
  auto iface = Process::restriction(
      "m", Process::par({Process::bridge("s0", "m"), Process::bridge("m", "r0")}));
  CHECK(free_channels(iface) == std::set<ChannelName>{"s0", "r0"});
  CHECK(free_channels(Process::distribute("a", {"a", "a"})) == std::set<ChannelName>{"a"});
}

TEST_CASE("free_channels: shadowing") {
  auto p = parse_process("?a || new a. +a");
  CHECK(free_channels(p) == std::set<ChannelName>{"a"});
  auto q = parse_process("new a. (?a || new a. a -> b)");
  CHECK(free_channels(q) == std::set<ChannelName>{"b"});
}

TEST_CASE("to_string: restriction inside parallel keeps its scope") {
  auto p = Process::par({Process::restriction("a", Process::lose("a")), Process::dup("b")});
  auto back = parse_process(to_string(p));
  CHECK(equal(normalize(back), normalize(p)));
  auto q = Process::par({Process::dup("b"), Process::restriction("a", Process::lose("a"))});
  CHECK(equal(normalize(parse_process(to_string(q))), normalize(q)));
}

TEST_CASE("channel names validated") {
  CHECK_THROWS(Process::bridge("", "b"));
  CHECK_THROWS(Process::lose("a b"));
  CHECK(is_valid_channel_name("l_10_2"));
  CHECK_FALSE(is_valid_channel_name("a-b"));
}
