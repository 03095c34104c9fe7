#include "commnet/process.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace commnet {

bool is_valid_channel_name(const ChannelName& name) {
  if (name.empty()) return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_';
    if (!ok) return false;
  }
  return true;
}

namespace {

void require_name(const ChannelName& name) {
  if (!is_valid_channel_name(name))
    throw std::invalid_argument("invalid channel name: '" + name + "'");
}

struct Node : Process {
  Node(Kind kind, ChannelName channel, std::vector<ChannelName> targets,
       std::vector<ProcessPtr> children)
      : Process(kind, std::move(channel), std::move(targets), std::move(children)) {}
};

ProcessPtr make(Process::Kind kind, ChannelName channel, std::vector<ChannelName> targets,
                std::vector<ProcessPtr> children) {
  return std::make_shared<Node>(kind, std::move(channel), std::move(targets),
                                std::move(children));
}

}  // namespace

ProcessPtr Process::stop() { return make(Kind::stop, {}, {}, {}); }

ProcessPtr Process::par(std::vector<ProcessPtr> children) {
  for (const auto& c : children)
    if (!c) throw std::invalid_argument("null parallel component");
  return make(Kind::par, {}, {}, std::move(children));
}

ProcessPtr Process::restriction(ChannelName channel, ProcessPtr body) {
  require_name(channel);
  if (!body) throw std::invalid_argument("null restriction body");
  return make(Kind::restriction, std::move(channel), {}, {std::move(body)});
}

ProcessPtr Process::distribute(ChannelName source, std::vector<ChannelName> targets) {
  require_name(source);
  for (const auto& t : targets) require_name(t);
  return make(Kind::distribute, std::move(source), std::move(targets), {});
}

ProcessPtr Process::bridge(ChannelName source, ChannelName target) {
  require_name(source);
  require_name(target);
  return make(Kind::bridge, std::move(source), {std::move(target)}, {});
}

ProcessPtr Process::lose(ChannelName channel) {
  require_name(channel);
  return make(Kind::lose, std::move(channel), {}, {});
}

ProcessPtr Process::dup(ChannelName channel) {
  require_name(channel);
  return make(Kind::dup, std::move(channel), {}, {});
}

ProcessPtr Process::duplose(ChannelName channel) {
  require_name(channel);
  return make(Kind::duplose, std::move(channel), {}, {});
}

bool equal(const ProcessPtr& a, const ProcessPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Process::Kind::stop:
      return true;
    case Process::Kind::par: {
      const auto& xs = a->children();
      const auto& ys = b->children();
      if (xs.size() != ys.size()) return false;
      for (size_t i = 0; i < xs.size(); ++i)
        if (!equal(xs[i], ys[i])) return false;
      return true;
    }
    case Process::Kind::restriction:
      return a->channel() == b->channel() && equal(a->body(), b->body());
    case Process::Kind::distribute:
    case Process::Kind::bridge:
      return a->channel() == b->channel() && a->targets() == b->targets();
    case Process::Kind::lose:
    case Process::Kind::dup:
    case Process::Kind::duplose:
      return a->channel() == b->channel();
  }
  return false;
}

namespace {

// Printing. Parallel composition is lowest precedence and `new` extends to
// the rest of the group, so nested pars and non-final restriction components
// get wrapped in parentheses.
void print(const ProcessPtr& p, std::ostringstream& out) {
  switch (p->kind()) {
    case Process::Kind::stop:
      out << "0";
      break;
    case Process::Kind::par: {
      const auto& cs = p->children();
      if (cs.empty()) {
        out << "0";
        break;
      }
      if (cs.size() == 1) {
        print(cs[0], out);
        break;
      }
      for (size_t i = 0; i < cs.size(); ++i) {
        if (i) out << " || ";
        bool last = i + 1 == cs.size();
        bool need_parens = cs[i]->kind() == Process::Kind::par ||
                           (cs[i]->kind() == Process::Kind::restriction && !last);
        if (need_parens) out << "(";
        print(cs[i], out);
        if (need_parens) out << ")";
      }
      break;
    }
    case Process::Kind::restriction:
      out << "new " << p->channel() << ". ";
      print(p->body(), out);
      break;
    case Process::Kind::distribute: {
      out << p->channel() << " => [";
      const auto& ts = p->targets();
      for (size_t i = 0; i < ts.size(); ++i) {
        if (i) out << ", ";
        out << ts[i];
      }
      out << "]";
      break;
    }
    case Process::Kind::bridge:
      out << p->channel() << " -> " << p->target();
      break;
    case Process::Kind::lose:
      out << "?" << p->channel();
      break;
    case Process::Kind::dup:
      out << "+" << p->channel();
      break;
    case Process::Kind::duplose:
      out << "*" << p->channel();
      break;
  }
}

}  // namespace

std::string to_string(const ProcessPtr& p) {
  std::ostringstream out;
  print(p, out);
  return out.str();
}

ProcessPtr desugar(const ProcessPtr& p) {
  switch (p->kind()) {
    case Process::Kind::stop:
    case Process::Kind::distribute:
      return p;
    case Process::Kind::par: {
      std::vector<ProcessPtr> cs;
      cs.reserve(p->children().size());
      bool changed = false;
      for (const auto& c : p->children()) {
        auto d = desugar(c);
        changed |= d.get() != c.get();
        cs.push_back(std::move(d));
      }
      return changed ? Process::par(std::move(cs)) : p;
    }
    case Process::Kind::restriction: {
      auto b = desugar(p->body());
      return b.get() == p->body().get() ? p : Process::restriction(p->channel(), std::move(b));
    }
    case Process::Kind::bridge:
      return Process::distribute(p->channel(), {p->target()});
    case Process::Kind::lose:
      return Process::distribute(p->channel(), {});
    case Process::Kind::dup:
      return Process::distribute(p->channel(), {p->channel(), p->channel()});
    case Process::Kind::duplose:
      // A duploser is a loser composed in parallel with a duplicator.
      return Process::par({Process::distribute(p->channel(), {}),
                           Process::distribute(p->channel(),
                                               {p->channel(), p->channel()})});
  }
  return p;
}

namespace {

using Env = std::map<ChannelName, int>;  // bound name -> binder depth

void key_of(const ProcessPtr& p, const Env& env, int depth, std::string& out) {
  auto ref = [&](const ChannelName& c) {
    auto it = env.find(c);
    if (it == env.end()) {
      out += '\'';
      out += c;
    } else {
      out += '%';
      out += std::to_string(depth - it->second);  // de Bruijn-style index
    }
  };
  switch (p->kind()) {
    case Process::Kind::stop:
      out += '0';
      break;
    case Process::Kind::par: {
      out += '(';
      for (size_t i = 0; i < p->children().size(); ++i) {
        if (i) out += '|';
        key_of(p->children()[i], env, depth, out);
      }
      out += ')';
      break;
    }
    case Process::Kind::restriction: {
      Env inner = env;
      inner[p->channel()] = depth;
      out += "N.";
      key_of(p->body(), inner, depth + 1, out);
      break;
    }
    case Process::Kind::distribute:
    case Process::Kind::bridge: {
      out += 'D';
      ref(p->channel());
      out += '[';
      const auto* ts = &p->targets();
      for (size_t i = 0; i < ts->size(); ++i) {
        if (i) out += ',';
        ref((*ts)[i]);
      }
      out += ']';
      break;
    }
    case Process::Kind::lose:
      out += '?';
      ref(p->channel());
      break;
    case Process::Kind::dup:
      out += '+';
      ref(p->channel());
      break;
    case Process::Kind::duplose:
      out += '*';
      ref(p->channel());
      break;
  }
}

// Flatten, with keys computed in the binding environment so sibling order is
// alpha-invariant. Returns the rebuilt node plus its key.
std::pair<ProcessPtr, std::string> flatten_in(const ProcessPtr& p, const Env& env, int depth) {
  switch (p->kind()) {
    case Process::Kind::stop:
      return {p, "0"};
    case Process::Kind::restriction: {
      Env inner = env;
      inner[p->channel()] = depth;
      auto [body, body_key] = flatten_in(p->body(), inner, depth + 1);
      return {Process::restriction(p->channel(), body), "N." + body_key};
    }
    case Process::Kind::par: {
      std::vector<std::pair<std::string, ProcessPtr>> parts;
      std::function<void(const ProcessPtr&)> collect = [&](const ProcessPtr& c) {
        if (c->kind() == Process::Kind::par) {
          for (const auto& g : c->children()) collect(g);
          return;
        }
        auto [f, k] = flatten_in(c, env, depth);
        if (f->kind() == Process::Kind::stop) return;
        if (f->kind() == Process::Kind::par) {
          for (const auto& g : f->children()) {
            std::string gk;
            key_of(g, env, depth, gk);
            parts.emplace_back(std::move(gk), g);
          }
          return;
        }
        parts.emplace_back(std::move(k), std::move(f));
      };
      for (const auto& c : p->children()) collect(c);
      std::stable_sort(parts.begin(), parts.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      if (parts.empty()) return {Process::stop(), "0"};
      if (parts.size() == 1) return {parts[0].second, parts[0].first};
      std::vector<ProcessPtr> cs;
      std::string key = "(";
      for (size_t i = 0; i < parts.size(); ++i) {
        if (i) key += '|';
        key += parts[i].first;
        cs.push_back(parts[i].second);
      }
      key += ')';
      return {Process::par(std::move(cs)), std::move(key)};
    }
    case Process::Kind::distribute: {
      std::string k;
      key_of(p, env, depth, k);
      return {p, std::move(k)};
    }
    default: {
      // Sugar node: desugar locally and re-flatten.
      return flatten_in(desugar(p), env, depth);
    }
  }
}

int count_binders(const ProcessPtr& p) {
  switch (p->kind()) {
    case Process::Kind::par: {
      int n = 0;
      for (const auto& c : p->children()) n += count_binders(c);
      return n;
    }
    case Process::Kind::restriction:
      return 1 + count_binders(p->body());
    default:
      return 0;
  }
}

// Rebuild with canonical binder names. Binders are numbered post-order
// (children before their binder), giving innermost-first indexing; the name
// pool skips any `_k` free in the whole term.
struct Renamer {
  const std::vector<std::string>* pool;
  int next = 0;

  ProcessPtr run(const ProcessPtr& p, const std::map<ChannelName, ChannelName>& renaming) {
    switch (p->kind()) {
      case Process::Kind::stop:
        return p;
      case Process::Kind::par: {
        std::vector<ProcessPtr> cs;
        cs.reserve(p->children().size());
        for (const auto& c : p->children()) cs.push_back(run(c, renaming));
        return Process::par(std::move(cs));
      }
      case Process::Kind::restriction: {
        int inside = count_binders(p->body());
        const std::string& name = (*pool)[next + inside];
        auto inner = renaming;
        inner[p->channel()] = name;
        auto body = run(p->body(), inner);
        ++next;  // this binder's slot, after its body consumed `inside` slots
        return Process::restriction(name, std::move(body));
      }
      case Process::Kind::distribute: {
        auto rename = [&](const ChannelName& c) {
          auto it = renaming.find(c);
          return it == renaming.end() ? c : it->second;
        };
        std::vector<ChannelName> ts;
        ts.reserve(p->targets().size());
        for (const auto& t : p->targets()) ts.push_back(rename(t));
        return Process::distribute(rename(p->channel()), std::move(ts));
      }
      default:
        assert(false && "normalize operates on desugared terms");
        return p;
    }
  }
};

}  // namespace

ProcessPtr flatten(const ProcessPtr& p) { return flatten_in(p, {}, 0).first; }

std::string canonical_key(const ProcessPtr& p) {
  std::string out;
  key_of(p, {}, 0, out);
  return out;
}

ProcessPtr normalize(const ProcessPtr& p) {
  ProcessPtr flat = flatten(p);
  int binders = count_binders(flat);
  if (binders == 0) return flat;
  auto free = free_channels(flat);
  std::vector<std::string> pool;
  pool.reserve(binders);
  for (int k = 0; static_cast<int>(pool.size()) < binders; ++k) {
    std::string candidate = "_" + std::to_string(k);
    if (!free.count(candidate)) pool.push_back(std::move(candidate));
  }
  Renamer renamer{&pool, 0};
  return renamer.run(flat, {});
}

namespace {

void free_into(const ProcessPtr& p, std::vector<ChannelName>& bound,
               std::set<ChannelName>& out) {
  auto add = [&](const ChannelName& c) {
    if (std::find(bound.rbegin(), bound.rend(), c) == bound.rend()) out.insert(c);
  };
  switch (p->kind()) {
    case Process::Kind::stop:
      break;
    case Process::Kind::par:
      for (const auto& c : p->children()) free_into(c, bound, out);
      break;
    case Process::Kind::restriction:
      bound.push_back(p->channel());
      free_into(p->body(), bound, out);
      bound.pop_back();
      break;
    case Process::Kind::distribute:
    case Process::Kind::bridge:
      add(p->channel());
      for (const auto& t : p->targets()) add(t);
      break;
    case Process::Kind::lose:
    case Process::Kind::dup:
    case Process::Kind::duplose:
      add(p->channel());
      break;
  }
}

}  // namespace

std::set<ChannelName> free_channels(const ProcessPtr& p) {
  std::set<ChannelName> out;
  std::vector<ChannelName> bound;
  free_into(p, bound, out);
  return out;
}

}  // namespace commnet
