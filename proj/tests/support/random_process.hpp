#pragma once

#include <functional>
#include <random>

#include "commnet/process.hpp"

namespace commnet::testing {

struct RandomProcessOptions {
  int max_channels = 4;
  int max_components = 5;
  int max_depth = 2;
  bool allow_restriction = true;
};

/// Deterministic small-term generator for property tests.
inline ProcessPtr random_process(std::mt19937_64& rng, const RandomProcessOptions& opt = {}) {
  std::vector<ChannelName> pool;
  for (int i = 0; i < opt.max_channels; ++i) pool.push_back(std::string(1, char('a' + i)));
  auto chan = [&] { return pool[rng() % pool.size()]; };

  std::function<ProcessPtr(int)> group = [&](int depth) -> ProcessPtr {
    auto component = [&](int d) -> ProcessPtr {
      int limit = (d > 0 && opt.allow_restriction) ? 8 : 6;
      switch (rng() % limit) {
        case 0: return Process::stop();
        case 1: return Process::bridge(chan(), chan());
        case 2: {
          std::vector<ChannelName> targets;
          size_t n = rng() % 4;
          for (size_t i = 0; i < n; ++i) targets.push_back(chan());
          return Process::distribute(chan(), std::move(targets));
        }
        case 3: return Process::lose(chan());
        case 4: return Process::dup(chan());
        case 5: return Process::duplose(chan());
        case 6: return Process::restriction(chan(), group(d - 1));
        default: return group(d - 1);
      }
    };
    size_t n = 1 + rng() % opt.max_components;
    std::vector<ProcessPtr> parts;
    for (size_t i = 0; i < n; ++i) parts.push_back(component(depth));
    return parts.size() == 1 ? parts[0] : Process::par(std::move(parts));
  };
  return group(opt.max_depth);
}

}  // namespace commnet::testing
