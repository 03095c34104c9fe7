#include "commnet/net.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace commnet {

std::optional<uint32_t> Net::global_place(const ChannelName& name) const {
  for (uint32_t i = 0; i < places.size(); ++i)
    if (!places[i].local && places[i].name == name) return i;
  return std::nullopt;
}

uint32_t Net::ensure_global_place(const ChannelName& name) {
  if (auto i = global_place(name)) return *i;
  places.push_back({name, false});
  return static_cast<uint32_t>(places.size() - 1);
}

std::vector<ChannelName> Net::send_channels() const {
  std::set<ChannelName> s;
  for (const auto& t : transitions)
    if (!places[t.source].local) s.insert(places[t.source].name);
  return {s.begin(), s.end()};
}

namespace {

struct Compiler {
  Net net;
  std::map<ChannelName, uint32_t> globals;
  std::set<ChannelName> used_names;  // display names taken (free channels pre-reserved)

  uint32_t global(const ChannelName& name) {
    auto it = globals.find(name);
    if (it != globals.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(net.places.size());
    net.places.push_back({name, false});
    globals.emplace(name, id);
    return id;
  }

  uint32_t fresh_local(const ChannelName& name) {
    ChannelName display = name;
    int suffix = 2;
    while (!used_names.insert(display).second)
      display = name + "~" + std::to_string(suffix++);
    uint32_t id = static_cast<uint32_t>(net.places.size());
    net.places.push_back({display, true});
    return id;
  }

  // env maps in-scope bound names to their place.
  void walk(const ProcessPtr& p, std::map<ChannelName, uint32_t>& env) {
    switch (p->kind()) {
      case Process::Kind::stop:
        return;
      case Process::Kind::par:
        for (const auto& c : p->children()) walk(c, env);
        return;
      case Process::Kind::restriction: {
        uint32_t place = fresh_local(p->channel());
        auto it = env.find(p->channel());
        std::optional<uint32_t> shadowed;
        if (it != env.end()) shadowed = it->second;
        env[p->channel()] = place;
        walk(p->body(), env);
        if (shadowed)
          env[p->channel()] = *shadowed;
        else
          env.erase(p->channel());
        return;
      }
      case Process::Kind::distribute: {
        auto resolve = [&](const ChannelName& c) {
          auto e = env.find(c);
          return e != env.end() ? e->second : global(c);
        };
        Net::Transition t;
        t.source = resolve(p->channel());
        for (const auto& tgt : p->targets()) t.targets.push_back(resolve(tgt));
        std::sort(t.targets.begin(), t.targets.end());
        net.transitions.push_back(std::move(t));
        return;
      }
      default:
        // compile() desugars first
        return;
    }
  }
};

}  // namespace

Net compile(const ProcessPtr& p) {
  Compiler c;
  ProcessPtr core = desugar(p);
  for (const auto& name : free_channels(core)) c.used_names.insert(name);
  std::map<ChannelName, uint32_t> env;
  c.walk(core, env);
  return std::move(c.net);
}

}  // namespace commnet
