#include "commnet/explore.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <set>

namespace commnet {

std::string to_string(const Label& label) {
  switch (label.kind) {
    case Label::Kind::tau:
      return "tau";
    case Label::Kind::in:
      return "In(" + label.channel + "," + label.symbol + ")";
    case Label::Kind::out:
      return "Out(" + label.channel + "," + label.symbol + ")";
  }
  return "?";
}

std::vector<std::string> default_alphabet(size_t n) {
  if (n == 1) return {"p"};
  if (n == 2) return {"p", "q"};
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back("p" + std::to_string(i));
  return out;
}

namespace {

using Layout = detail::StateLayout;

[[noreturn]] void capacity_error(const ChannelName& channel, const std::string& symbol) {
  ExploreError e(ExploreError::Kind::capacity_exceeded,
                 "capacity exceeded on channel '" + channel + "' for packet '" + symbol + "'");
  e.channel = channel;
  e.packet = symbol;
  throw e;
}

// Successor generator over packed states. Also owns the label table and the
// layout; explore() and enabled() share it so the firing rules live in one
// place.
struct Machine {
  Net net;  // interface-extended copy
  ExploreOptions opts;
  Layout layout;
  std::vector<Label> labels;

  struct VisibleMove {
    uint32_t place;
    uint32_t symbol;
  };
  std::vector<VisibleMove> in_moves;   // label id 1 + i
  std::vector<VisibleMove> out_moves;  // label id 1 + in_moves.size() + i

  std::vector<bool> place_duplicated;      // some transition (a,T) has a twice in T
  std::vector<bool> transition_is_pure_dup;  // T == {source, source}

  Machine(const Net& base, const ExploreOptions& options) : net(base), opts(options) {
    if (opts.alphabet.empty()) throw Error("explore: empty alphabet");
    std::sort(opts.alphabet.begin(), opts.alphabet.end());
    opts.alphabet.erase(std::unique(opts.alphabet.begin(), opts.alphabet.end()),
                        opts.alphabet.end());
    if (opts.semantics == SemanticsMode::exact && opts.capacity_cap < 1)
      throw Error("explore: capacity cap must be >= 1");

    for (const auto& extra : opts.extra_send_channels) net.ensure_global_place(extra);

    const uint32_t P = static_cast<uint32_t>(net.places.size());
    const uint32_t A = static_cast<uint32_t>(opts.alphabet.size());
    layout.num_places = P;
    layout.num_symbols = A;
    layout.exact = opts.semantics == SemanticsMode::exact;
    layout.has_dup_budget = layout.exact && opts.dup_budget.has_value();
    layout.marking_bytes = layout.exact ? P * A : (P * A + 7) / 8;
    layout.budget_offset = layout.marking_bytes;

    // Send channels: global sources of transitions plus the declared extras.
    std::set<ChannelName> sends;
    for (const auto& name : net.send_channels()) sends.insert(name);
    for (const auto& name : opts.extra_send_channels) sends.insert(name);
    for (const auto& name : sends) layout.send_places.push_back(*net.global_place(name));

    layout.dup_offset =
        layout.budget_offset + static_cast<uint32_t>(layout.send_places.size()) * A;
    layout.width = layout.dup_offset + (layout.has_dup_budget ? 1 : 0);
    if (layout.width == 0) layout.width = 1;  // placeless nets still need a state

    if (opts.injection_budget > 255) throw Error("explore: injection budget must be <= 255");
    if (layout.exact && opts.capacity_cap > 255) throw Error("explore: capacity cap must be <= 255");
    if (layout.has_dup_budget && *opts.dup_budget > 255)
      throw Error("explore: dup budget must be <= 255");

    // Label table: tau, then In over send channels, then Out over all global
    // places; both sorted by (channel, symbol) independently of net order.
    labels.push_back(Label{});
    for (uint32_t sp : layout.send_places)
      for (uint32_t a = 0; a < A; ++a) {
        labels.push_back({Label::Kind::in, net.places[sp].name, opts.alphabet[a]});
        in_moves.push_back({sp, a});
      }
    std::vector<uint32_t> out_places;
    for (uint32_t i = 0; i < P; ++i)
      if (!net.places[i].local) out_places.push_back(i);
    std::sort(out_places.begin(), out_places.end(),
              [&](uint32_t x, uint32_t y) { return net.places[x].name < net.places[y].name; });
    for (uint32_t op : out_places)
      for (uint32_t a = 0; a < A; ++a) {
        labels.push_back({Label::Kind::out, net.places[op].name, opts.alphabet[a]});
        out_moves.push_back({op, a});
      }
    if (labels.size() > 65535) throw Error("explore: label space too large");

    place_duplicated.assign(P, false);
    transition_is_pure_dup.assign(net.transitions.size(), false);
    for (size_t t = 0; t < net.transitions.size(); ++t) {
      const auto& tr = net.transitions[t];
      size_t self = std::count(tr.targets.begin(), tr.targets.end(), tr.source);
      if (self >= 2) place_duplicated[tr.source] = true;
      transition_is_pure_dup[t] = tr.targets.size() == 2 && self == 2;
    }
  }

  uint32_t count(const uint8_t* s, uint32_t place, uint32_t sym) const {
    uint32_t idx = place * layout.num_symbols + sym;
    if (layout.exact) return s[idx];
    return (s[idx >> 3] >> (idx & 7)) & 1u;
  }

  void add_token(uint8_t* s, uint32_t place, uint32_t sym) const {
    uint32_t idx = place * layout.num_symbols + sym;
    if (!layout.exact) {
      s[idx >> 3] |= uint8_t(1u << (idx & 7));
      return;
    }
    if (uint32_t(s[idx]) + 1 > opts.capacity_cap) {
      if (opts.cap_policy == CapPolicy::error)
        capacity_error(net.places[place].name, opts.alphabet[sym]);
      s[idx] = static_cast<uint8_t>(opts.capacity_cap);  // clamp
    } else {
      ++s[idx];
    }
  }

  void remove_token(uint8_t* s, uint32_t place, uint32_t sym) const {
    uint32_t idx = place * layout.num_symbols + sym;
    if (layout.exact) {
      assert(s[idx] > 0);
      --s[idx];
    } else {
      s[idx >> 3] &= uint8_t(~(1u << (idx & 7)));
    }
  }

  uint8_t budget(const uint8_t* s, uint32_t send_index, uint32_t sym) const {
    return s[layout.budget_offset + send_index * layout.num_symbols + sym];
  }

  void set_budget(uint8_t* s, uint32_t send_index, uint32_t sym, uint8_t v) const {
    s[layout.budget_offset + send_index * layout.num_symbols + sym] = v;
  }

  void make_initial(uint8_t* s) const {
    std::memset(s, 0, layout.width);
    for (size_t i = 0; i < layout.send_places.size(); ++i)
      for (uint32_t a = 0; a < layout.num_symbols; ++a)
        set_budget(s, static_cast<uint32_t>(i), a, static_cast<uint8_t>(opts.injection_budget));
    if (layout.has_dup_budget) s[layout.dup_offset] = static_cast<uint8_t>(*opts.dup_budget);
  }

  /// Enumerates successors in a fixed order: injections, observations, then
  /// transition firings (net order) per symbol. fn(label_id, bytes).
  template <class F>
  void successors(const uint8_t* s, std::vector<uint8_t>& scratch, F&& fn) const {
    scratch.resize(layout.width);
    uint8_t* w = scratch.data();

    for (size_t i = 0; i < in_moves.size(); ++i) {
      uint32_t send_index = static_cast<uint32_t>(i) / layout.num_symbols;
      uint32_t sym = static_cast<uint32_t>(i) % layout.num_symbols;
      if (budget(s, send_index, sym) == 0) continue;
      std::memcpy(w, s, layout.width);
      set_budget(w, send_index, sym, budget(s, send_index, sym) - 1);
      add_token(w, in_moves[i].place, sym);
      fn(static_cast<uint16_t>(1 + i), w);
    }

    const uint16_t out_base = static_cast<uint16_t>(1 + in_moves.size());
    for (size_t i = 0; i < out_moves.size(); ++i) {
      if (count(s, out_moves[i].place, out_moves[i].symbol) == 0) continue;
      std::memcpy(w, s, layout.width);
      // Under set semantics a duplicated channel never runs dry by being
      // observed (a duplication could have been interleaved first); only
      // losers drain it. Everywhere else Out consumes one occurrence.
      if (layout.exact || !place_duplicated[out_moves[i].place])
        remove_token(w, out_moves[i].place, out_moves[i].symbol);
      fn(static_cast<uint16_t>(out_base + i), w);
    }

    for (size_t t = 0; t < net.transitions.size(); ++t) {
      const auto& tr = net.transitions[t];
      for (uint32_t sym = 0; sym < layout.num_symbols; ++sym) {
        if (count(s, tr.source, sym) == 0) continue;
        if (!layout.exact) {
          if (transition_is_pure_dup[t]) continue;  // elided under set semantics
          std::memcpy(w, s, layout.width);
          // Losers and non-duplicated sources consume; reads from duplicated
          // channels do not (a duplication could have been interleaved first).
          if (tr.targets.empty() || !place_duplicated[tr.source])
            remove_token(w, tr.source, sym);
          for (uint32_t tgt : tr.targets) add_token(w, tgt, sym);
          fn(0, w);
        } else {
          bool net_increasing = tr.targets.size() >= 2;
          if (net_increasing && layout.has_dup_budget && s[layout.dup_offset] == 0) continue;
          std::memcpy(w, s, layout.width);
          if (net_increasing && layout.has_dup_budget) --w[layout.dup_offset];
          remove_token(w, tr.source, sym);
          for (uint32_t tgt : tr.targets) add_token(w, tgt, sym);
          fn(0, w);
        }
      }
    }
  }

  Config decode(const uint8_t* s) const {
    Config c;
    c.marking.assign(layout.num_places, std::vector<uint32_t>(layout.num_symbols, 0));
    for (uint32_t p = 0; p < layout.num_places; ++p)
      for (uint32_t a = 0; a < layout.num_symbols; ++a) c.marking[p][a] = count(s, p, a);
    c.budgets.assign(layout.num_places, {});
    for (size_t i = 0; i < layout.send_places.size(); ++i) {
      auto& b = c.budgets[layout.send_places[i]];
      b.assign(layout.num_symbols, 0);
      for (uint32_t a = 0; a < layout.num_symbols; ++a)
        b[a] = budget(s, static_cast<uint32_t>(i), a);
    }
    if (layout.has_dup_budget) c.dup_remaining = s[layout.dup_offset];
    return c;
  }

  void encode(const Config& c, uint8_t* s) const {
    std::memset(s, 0, layout.width);
    if (c.marking.size() != layout.num_places)
      throw Error("config does not match net (marking size)");
    for (uint32_t p = 0; p < layout.num_places; ++p) {
      if (c.marking[p].size() != layout.num_symbols)
        throw Error("config does not match alphabet");
      for (uint32_t a = 0; a < layout.num_symbols; ++a) {
        uint32_t v = c.marking[p][a];
        if (!layout.exact && v > 1) throw Error("set-semantics marking must be 0/1");
        if (layout.exact && v > opts.capacity_cap) throw Error("marking exceeds capacity cap");
        uint32_t idx = p * layout.num_symbols + a;
        if (layout.exact)
          s[idx] = static_cast<uint8_t>(v);
        else if (v)
          s[idx >> 3] |= uint8_t(1u << (idx & 7));
      }
    }
    for (size_t i = 0; i < layout.send_places.size(); ++i) {
      uint32_t p = layout.send_places[i];
      if (p < c.budgets.size() && !c.budgets[p].empty()) {
        for (uint32_t a = 0; a < layout.num_symbols; ++a)
          set_budget(s, static_cast<uint32_t>(i), a, static_cast<uint8_t>(c.budgets[p][a]));
      }
    }
    if (layout.has_dup_budget)
      s[layout.dup_offset] = static_cast<uint8_t>(c.dup_remaining.value_or(*opts.dup_budget));
  }
};

uint64_t hash_bytes(const uint8_t* data, size_t n) {
  uint64_t h = 1469598103934665603ULL;
  for (size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 1099511628211ULL;
  }
  return h;
}

// Open-addressing dedup table over the state arena.
struct StateTable {
  std::vector<uint32_t> buckets;  // state index + 1; 0 = empty
  size_t mask = 0;
  size_t size = 0;

  explicit StateTable(size_t initial_pow2 = 1 << 16) {
    buckets.assign(initial_pow2, 0);
    mask = initial_pow2 - 1;
  }

  template <class Eq>
  uint32_t* slot(uint64_t h, const Eq& eq) {
    size_t i = h & mask;
    for (;;) {
      uint32_t& b = buckets[i];
      if (b == 0 || eq(b - 1)) return &b;
      i = (i + 1) & mask;
    }
  }

  void maybe_grow(const std::vector<uint8_t>& arena, uint32_t width) {
    if (size * 10 < buckets.size() * 7) return;
    std::vector<uint32_t> old = std::move(buckets);
    buckets.assign(old.size() * 2, 0);
    mask = buckets.size() - 1;
    for (uint32_t b : old) {
      if (!b) continue;
      uint64_t h = hash_bytes(arena.data() + size_t(b - 1) * width, width);
      size_t i = h & mask;
      while (buckets[i]) i = (i + 1) & mask;
      buckets[i] = b;
    }
  }
};

}  // namespace

Config Lts::config_at(uint32_t s) const {
  const uint8_t* bytes = state_data(s);
  const auto& L = layout;
  auto count = [&](uint32_t place, uint32_t sym) -> uint32_t {
    uint32_t idx = place * L.num_symbols + sym;
    if (L.exact) return bytes[idx];
    return (bytes[idx >> 3] >> (idx & 7)) & 1u;
  };
  Config c;
  c.marking.assign(L.num_places, std::vector<uint32_t>(L.num_symbols, 0));
  for (uint32_t p = 0; p < L.num_places; ++p)
    for (uint32_t a = 0; a < L.num_symbols; ++a) c.marking[p][a] = count(p, a);
  c.budgets.assign(L.num_places, {});
  for (size_t i = 0; i < L.send_places.size(); ++i) {
    auto& b = c.budgets[L.send_places[i]];
    b.assign(L.num_symbols, 0);
    for (uint32_t a = 0; a < L.num_symbols; ++a)
      b[a] = bytes[L.budget_offset + i * L.num_symbols + a];
  }
  if (L.has_dup_budget) c.dup_remaining = bytes[L.dup_offset];
  return c;
}

std::vector<Lts::Edge> Lts::out_edges(uint32_t s) const {
  std::vector<Edge> out;
  for (uint32_t i = row_offsets[s]; i < row_offsets[s + 1]; ++i)
    out.push_back({edge_labels[i], edge_targets[i]});
  return out;
}

Config initial_config(const Net& net, const ExploreOptions& opts) {
  Machine m(net, opts);
  std::vector<uint8_t> s(m.layout.width);
  m.make_initial(s.data());
  return m.decode(s.data());
}

std::vector<std::pair<Label, Config>> enabled(const Net& net, const Config& c,
                                              const ExploreOptions& opts) {
  Machine m(net, opts);
  std::vector<uint8_t> s(m.layout.width);
  m.encode(c, s.data());
  std::vector<std::pair<Label, Config>> out;
  std::vector<uint8_t> scratch;
  m.successors(s.data(), scratch, [&](uint16_t label, const uint8_t* bytes) {
    out.emplace_back(m.labels[label], m.decode(bytes));
  });
  return out;
}

Lts explore(const Net& net, const ExploreOptions& opts) {
  Machine m(net, opts);
  const uint32_t width = m.layout.width;

  Lts lts;
  lts.options = m.opts;
  lts.labels = m.labels;
  lts.layout = m.layout;

  std::vector<uint8_t>& arena = lts.state_bytes;
  StateTable table;

  auto intern = [&](const uint8_t* bytes) -> std::pair<uint32_t, bool> {
    uint64_t h = hash_bytes(bytes, width);
    uint32_t* b = table.slot(h, [&](uint32_t idx) {
      return std::memcmp(arena.data() + size_t(idx) * width, bytes, width) == 0;
    });
    if (*b) return {*b - 1, false};
    uint32_t idx = static_cast<uint32_t>(arena.size() / width);
    arena.insert(arena.end(), bytes, bytes + width);
    *b = idx + 1;
    ++table.size;
    table.maybe_grow(arena, width);
    return {idx, true};
  };

  std::vector<uint8_t> init(width);
  m.make_initial(init.data());
  intern(init.data());
  lts.initial = 0;

  std::vector<uint8_t> scratch;
  std::vector<uint8_t> current(width);
  lts.row_offsets.push_back(0);
  for (uint32_t s = 0; s * size_t(width) < arena.size(); ++s) {
    std::memcpy(current.data(), arena.data() + size_t(s) * width, width);
    m.successors(current.data(), scratch, [&](uint16_t label, const uint8_t* bytes) {
      auto [idx, fresh] = intern(bytes);
      lts.edge_labels.push_back(label);
      lts.edge_targets.push_back(idx);
      if (fresh && arena.size() / width > opts.state_limit) {
        ExploreError e(ExploreError::Kind::state_limit_exceeded,
                       "explore: state limit exceeded (" + std::to_string(opts.state_limit) +
                           " states)");
        throw e;
      }
    });
    lts.row_offsets.push_back(static_cast<uint32_t>(lts.edge_targets.size()));
  }

  lts.num_states = static_cast<uint32_t>(arena.size() / width);
  lts.net = std::make_shared<Net>(std::move(m.net));
  return lts;
}

Lts explore(const ProcessPtr& p, const ExploreOptions& opts) {
  return explore(compile(p), opts);
}

}  // namespace commnet
