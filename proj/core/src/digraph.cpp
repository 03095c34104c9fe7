#include "commnet/digraph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace commnet {

void Digraph::add_node(unsigned id) {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
  if (it == nodes.end() || *it != id) nodes.insert(it, id);
}

void Digraph::add_edge(unsigned from, unsigned to) {
  if (from == to) throw Error("self-loop edge " + std::to_string(from) + " -> " + std::to_string(to));
  add_node(from);
  add_node(to);
  auto e = std::make_pair(from, to);
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || *it != e) edges.insert(it, e);
}

bool Digraph::has_node(unsigned id) const {
  return std::binary_search(nodes.begin(), nodes.end(), id);
}

std::vector<unsigned> Digraph::successors(unsigned id) const {
  std::vector<unsigned> out;
  for (const auto& [a, b] : edges)
    if (a == id) out.push_back(b);
  return out;
}

Digraph parse_digraph(std::string_view text) {
  Digraph g;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string body = line.substr(first, last - first + 1);
    auto fail = [&](const std::string& msg) {
      throw Error("graph line " + std::to_string(lineno) + ": " + msg);
    };
    if (body.rfind("nodes:", 0) == 0) {
      std::istringstream ids(body.substr(6));
      std::string tok;
      while (ids >> tok) {
        // allow comma separators
        std::replace(tok.begin(), tok.end(), ',', ' ');
        std::istringstream sub(tok);
        unsigned id;
        while (sub >> id) g.add_node(id);
        if (!sub.eof() && sub.fail()) fail("bad node id in '" + tok + "'");
      }
      continue;
    }
    auto arrow = body.find("->");
    if (arrow == std::string::npos) fail("expected 'i -> j'");
    unsigned from, to;
    {
      std::istringstream a(body.substr(0, arrow));
      if (!(a >> from)) fail("bad source node id");
      std::string rest;
      if (a >> rest) fail("unexpected text before '->'");
    }
    {
      std::istringstream b(body.substr(arrow + 2));
      if (!(b >> to)) fail("bad target node id");
      std::string rest;
      if (b >> rest) fail("unexpected text after edge");
    }
    g.add_edge(from, to);
  }
  return g;
}

Digraph load_digraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_digraph(buf.str());
}

namespace {

size_t reachable_count(const Digraph& g, unsigned start, bool reversed) {
  std::vector<unsigned> stack{start};
  std::vector<unsigned> seen{start};
  while (!stack.empty()) {
    unsigned v = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : g.edges) {
      unsigned from = reversed ? b : a;
      unsigned to = reversed ? a : b;
      if (from != v) continue;
      if (std::find(seen.begin(), seen.end(), to) == seen.end()) {
        seen.push_back(to);
        stack.push_back(to);
      }
    }
  }
  return seen.size();
}

}  // namespace

bool is_strongly_connected(const Digraph& g) {
  if (g.nodes.size() <= 1) return true;
  unsigned start = g.nodes.front();
  return reachable_count(g, start, false) == g.nodes.size() &&
         reachable_count(g, start, true) == g.nodes.size();
}

std::vector<unsigned> nodes_without_out_edges(const Digraph& g) {
  std::vector<unsigned> out;
  for (unsigned v : g.nodes) {
    bool has = false;
    for (const auto& [a, b] : g.edges)
      if (a == v) {
        has = true;
        break;
      }
    if (!has) out.push_back(v);
  }
  return out;
}

}  // namespace commnet
