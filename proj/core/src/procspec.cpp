#include "commnet/procspec.hpp"

#include <fstream>
#include <sstream>

#include "commnet/digraph.hpp"
#include "commnet/explore.hpp"
#include "commnet/networks.hpp"
#include "commnet/parse.hpp"

namespace commnet {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join_path(const std::string& base, const std::string& path) {
  if (base.empty() || path.empty() || path.front() == '/') return path;
  return base + "/" + path;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

ProcessPtr resolve_process_spec(const std::string& spec, const std::string& base_dir) {
  auto colon = spec.find(':');
  std::string kind = colon == std::string::npos ? "file" : spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? spec : spec.substr(colon + 1);
  if (kind == "file") return parse_process(read_file(join_path(base_dir, rest)));
  if (kind == "process") return parse_process(rest);
  if (kind == "direct") {
    std::vector<unsigned> nodes;
    for (const auto& tok : split(rest, ',')) {
      if (tok.empty()) throw Error("direct builder: empty node id in '" + spec + "'");
      nodes.push_back(static_cast<unsigned>(std::stoul(tok)));
    }
    return direct_broadcast(nodes);
  }
  if (kind == "multicast") {
    if (!rest.empty() && rest.front() == '@')
      return multicast(load_digraph(join_path(base_dir, rest.substr(1))));
    Digraph g;
    for (const auto& tok : split(rest, ',')) {
      auto gt = tok.find('>');
      if (gt == std::string::npos)
        throw Error("multicast builder: expected 'i>j' edge, got '" + tok + "'");
      g.add_edge(static_cast<unsigned>(std::stoul(tok.substr(0, gt))),
                 static_cast<unsigned>(std::stoul(tok.substr(gt + 1))));
    }
    return multicast(g);
  }
  // unknown prefix: treat the whole spec as a file path (names may contain ':')
  return parse_process(read_file(join_path(base_dir, spec)));
}

std::vector<std::string> parse_alphabet_spec(const std::string& spec) {
  if (spec.empty()) throw Error("empty alphabet specification");
  bool all_digits = true;
  for (char c : spec)
    if (c < '0' || c > '9') all_digits = false;
  if (all_digits) {
    size_t n = std::stoul(spec);
    if (n == 0) throw Error("alphabet must be nonempty");
    return default_alphabet(n);
  }
  std::vector<std::string> out;
  for (const auto& tok : split(spec, ',')) {
    if (tok.empty()) throw Error("empty symbol in alphabet '" + spec + "'");
    out.push_back(tok);
  }
  return out;
}

}  // namespace commnet
