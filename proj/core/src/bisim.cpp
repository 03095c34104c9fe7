#include "commnet/bisim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <map>
#include <unordered_map>

#include "commnet/weak.hpp"

namespace commnet {

namespace {

// ---------------------------------------------------------------------------
// Joint view of two systems: right states are offset by the left state count,
// labels are merged into one table (tau stays id 0).

struct Joint {
  const Lts& left;
  const Lts& right;
  uint32_t n_left;
  uint32_t n;  // total states
  std::vector<Label> labels;
  std::vector<uint16_t> remap_left, remap_right;

  Joint(const Lts& l, const Lts& r) : left(l), right(r) {
    n_left = l.num_states;
    n = l.num_states + r.num_states;
    std::vector<Label> all;
    for (const auto& lab : l.labels) all.push_back(lab);
    for (const auto& lab : r.labels) all.push_back(lab);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    labels = all;  // tau sorts first
    auto build = [&](const Lts& side, std::vector<uint16_t>& remap) {
      remap.resize(side.labels.size());
      for (size_t i = 0; i < side.labels.size(); ++i) {
        auto it = std::lower_bound(labels.begin(), labels.end(), side.labels[i]);
        remap[i] = static_cast<uint16_t>(it - labels.begin());
      }
    };
    build(l, remap_left);
    build(r, remap_right);
  }

  const Lts& side_of(uint32_t node) const { return node < n_left ? left : right; }
  uint32_t local_state(uint32_t node) const { return node < n_left ? node : node - n_left; }

  template <class F>
  void for_edges(uint32_t node, F&& fn) const {
    const Lts& s = side_of(node);
    const auto& remap = node < n_left ? remap_left : remap_right;
    uint32_t base = node < n_left ? 0 : n_left;
    uint32_t u = local_state(node);
    for (uint32_t e = s.row_offsets[u]; e < s.row_offsets[u + 1]; ++e)
      fn(remap[s.edge_labels[e]], s.edge_targets[e] + base);
  }
};

// ---------------------------------------------------------------------------
// Tau-SCC condensation (iterative Tarjan restricted to tau edges).

struct Condensation {
  std::vector<uint32_t> comp;   // node -> component, ids in completion order
  uint32_t num_comps = 0;
  // Deduplicated component-level edges. Tau edges exclude intra-component
  // ones, so the tau graph is a DAG whose topological order is comp id
  // descending (successors have smaller ids).
  std::vector<uint32_t> tau_offsets, tau_targets;
  std::vector<uint32_t> vis_offsets;
  std::vector<uint64_t> vis_edges;  // (label << 32) | target comp
};

Condensation condense(const Joint& j) {
  Condensation c;
  const uint32_t n = j.n;
  c.comp.assign(n, UINT32_MAX);

  std::vector<uint32_t> index(n, UINT32_MAX), low(n, 0);
  std::vector<uint32_t> scc_stack;
  std::vector<bool> on_stack(n, false);

  struct Frame {
    uint32_t node;
    uint32_t edge;  // cursor into the node's edge range
  };
  std::vector<Frame> call;
  uint32_t next_index = 0;

  for (uint32_t root = 0; root < n; ++root) {
    if (index[root] != UINT32_MAX) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    scc_stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const Lts& side = j.side_of(f.node);
      uint32_t u = j.local_state(f.node);
      uint32_t base = f.node < j.n_left ? 0 : j.n_left;
      uint32_t begin = side.row_offsets[u], end = side.row_offsets[u + 1];
      bool descended = false;
      while (f.edge < end - begin) {
        uint32_t e = begin + f.edge;
        ++f.edge;
        if (side.edge_labels[e] != 0) continue;  // tau edges only
        uint32_t v = side.edge_targets[e] + base;
        if (index[v] == UINT32_MAX) {
          index[v] = low[v] = next_index++;
          scc_stack.push_back(v);
          on_stack[v] = true;
          call.push_back({v, 0});
          descended = true;
          break;
        }
        if (on_stack[v]) low[f.node] = std::min(low[f.node], index[v]);
      }
      if (descended) continue;
      // finished node
      uint32_t node = f.node;
      call.pop_back();
      if (low[node] == index[node]) {
        uint32_t cid = c.num_comps++;
        for (;;) {
          uint32_t w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[w] = false;
          c.comp[w] = cid;
          if (w == node) break;
        }
      }
      if (!call.empty()) {
        uint32_t parent = call.back().node;
        low[parent] = std::min(low[parent], low[node]);
      }
    }
  }

  // component-level edges, deduplicated via packed sort
  if (c.num_comps >= (1u << 26) || j.labels.size() >= (1u << 12))
    throw Error("weak bisimilarity check: system too large to condense");
  std::vector<uint64_t> packed;
  for (uint32_t node = 0; node < n; ++node) {
    uint32_t sc = c.comp[node];
    j.for_edges(node, [&](uint16_t label, uint32_t target) {
      uint32_t tc = c.comp[target];
      if (label == 0 && tc == sc) return;  // intra-component tau
      packed.push_back((uint64_t(sc) << 38) | (uint64_t(label) << 26) | tc);
    });
  }
  std::sort(packed.begin(), packed.end());
  packed.erase(std::unique(packed.begin(), packed.end()), packed.end());

  c.tau_offsets.assign(c.num_comps + 1, 0);
  c.vis_offsets.assign(c.num_comps + 1, 0);
  for (uint64_t pe : packed) {
    uint32_t sc = static_cast<uint32_t>(pe >> 38);
    uint16_t label = static_cast<uint16_t>((pe >> 26) & 0xFFF);
    if (label == 0)
      ++c.tau_offsets[sc + 1];
    else
      ++c.vis_offsets[sc + 1];
  }
  for (uint32_t i = 0; i < c.num_comps; ++i) {
    c.tau_offsets[i + 1] += c.tau_offsets[i];
    c.vis_offsets[i + 1] += c.vis_offsets[i];
  }
  c.tau_targets.resize(c.tau_offsets.back());
  c.vis_edges.resize(c.vis_offsets.back());
  std::vector<uint32_t> tau_cursor = c.tau_offsets, vis_cursor = c.vis_offsets;
  for (uint64_t pe : packed) {
    uint32_t sc = static_cast<uint32_t>(pe >> 38);
    uint16_t label = static_cast<uint16_t>((pe >> 26) & 0xFFF);
    uint32_t tc = static_cast<uint32_t>(pe & ((1u << 26) - 1));
    if (label == 0)
      c.tau_targets[tau_cursor[sc]++] = tc;
    else
      c.vis_edges[vis_cursor[sc]++] = (uint64_t(label) << 32) | tc;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Signature refinement on the condensation. Weak signatures are computed per
// iteration by dynamic programming over the tau DAG: TB(c) = blocks reachable
// via =>, SIG(c) = weak moves into blocks of the current partition.

struct RefinementResult {
  std::vector<std::vector<uint32_t>> rounds;  // per round: comp -> block
  uint32_t blocks = 0;
  uint32_t iterations = 0;
};

RefinementResult refine_weak(const Condensation& c) {
  const uint32_t m = c.num_comps;
  RefinementResult res;
  std::vector<uint32_t> block(m, 0);
  res.rounds.push_back(block);
  uint32_t num_blocks = 1;

  std::vector<std::vector<uint32_t>> tb(m);
  std::vector<std::vector<uint64_t>> sig(m);
  std::vector<uint32_t> scratch32;
  std::vector<uint64_t> scratch64;

  for (uint32_t iter = 1;; ++iter) {
    // comp ids ascend in completion order, so successors come first
    for (uint32_t ci = 0; ci < m; ++ci) {
      scratch32.clear();
      scratch32.push_back(block[ci]);
      for (uint32_t e = c.tau_offsets[ci]; e < c.tau_offsets[ci + 1]; ++e) {
        const auto& t = tb[c.tau_targets[e]];
        scratch32.insert(scratch32.end(), t.begin(), t.end());
      }
      std::sort(scratch32.begin(), scratch32.end());
      scratch32.erase(std::unique(scratch32.begin(), scratch32.end()), scratch32.end());
      tb[ci] = scratch32;

      scratch64.clear();
      for (uint32_t b : tb[ci]) scratch64.push_back(b);  // (tau=0, block)
      for (uint32_t e = c.vis_offsets[ci]; e < c.vis_offsets[ci + 1]; ++e) {
        uint64_t label = c.vis_edges[e] >> 32;
        uint32_t target = static_cast<uint32_t>(c.vis_edges[e]);
        for (uint32_t b : tb[target]) scratch64.push_back((label << 32) | b);
      }
      for (uint32_t e = c.tau_offsets[ci]; e < c.tau_offsets[ci + 1]; ++e) {
        const auto& s = sig[c.tau_targets[e]];
        scratch64.insert(scratch64.end(), s.begin(), s.end());
      }
      std::sort(scratch64.begin(), scratch64.end());
      scratch64.erase(std::unique(scratch64.begin(), scratch64.end()), scratch64.end());
      sig[ci] = scratch64;
    }

    // split blocks by (old block, signature)
    std::unordered_map<uint64_t, std::vector<std::pair<uint32_t, uint32_t>>> buckets;
    std::vector<uint32_t> next_block(m, 0);
    uint32_t next_id = 0;
    auto hash_sig = [&](uint32_t ci) {
      uint64_t h = 1469598103934665603ULL ^ block[ci];
      for (uint64_t v : sig[ci]) {
        h ^= v;
        h *= 1099511628211ULL;
      }
      return h;
    };
    for (uint32_t ci = 0; ci < m; ++ci) {
      uint64_t h = hash_sig(ci);
      auto& bucket = buckets[h];
      uint32_t found = UINT32_MAX;
      for (auto& [rep, id] : bucket)
        if (block[rep] == block[ci] && sig[rep] == sig[ci]) {
          found = id;
          break;
        }
      if (found == UINT32_MAX) {
        found = next_id++;
        bucket.emplace_back(ci, found);
      }
      next_block[ci] = found;
    }

    res.iterations = iter;
    if (next_id == num_blocks) {  // no split: fixpoint
      res.blocks = num_blocks;
      return res;
    }
    num_blocks = next_id;
    block = std::move(next_block);
    res.rounds.push_back(block);
    if (iter > m + 1) throw Error("weak refinement failed to converge");  // unreachable
  }
}

// ---------------------------------------------------------------------------
// Witness generation: a bisimulation game played on the original states,
// using per-round blocks as a strictly decreasing measure.

struct WitnessBuilder {
  const Joint& joint;
  const Condensation& cond;
  const RefinementResult& ref;
  WeakLts weak_left, weak_right;
  Witness witness;
  std::unordered_map<uint64_t, uint32_t> memo;  // (left<<32|right) -> position

  WitnessBuilder(const Joint& j, const Condensation& c, const RefinementResult& r,
                 std::shared_ptr<const Lts> l, std::shared_ptr<const Lts> rp)
      : joint(j), cond(c), ref(r), weak_left(std::move(l)), weak_right(std::move(rp)) {}

  uint32_t block_at(uint32_t round, bool left_side, uint32_t state) const {
    uint32_t node = left_side ? state : state + joint.n_left;
    return ref.rounds[round][cond.comp[node]];
  }

  uint32_t separation_round(uint32_t ls, uint32_t rs) const {
    for (uint32_t r = 0; r < ref.rounds.size(); ++r)
      if (block_at(r, true, ls) != block_at(r, false, rs)) return r;
    return UINT32_MAX;  // equivalent pair
  }

  uint32_t build(uint32_t ls, uint32_t rs) {
    uint64_t key = (uint64_t(ls) << 32) | rs;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    uint32_t sep = separation_round(ls, rs);
    if (sep == UINT32_MAX || sep == 0)
      throw Error("internal: witness requested for non-separated pair");

    uint32_t pos_id = static_cast<uint32_t>(witness.positions.size());
    witness.positions.push_back({});
    memo.emplace(key, pos_id);

    // Attack search: first (side, label) in deterministic order offering a
    // weak move into a round-(sep-1) block the defender cannot reach.
    for (int side = 0; side < 2; ++side) {
      bool attacker_left = side == 0;
      WeakLts& atk = attacker_left ? weak_left : weak_right;
      WeakLts& def = attacker_left ? weak_right : weak_left;
      uint32_t a = attacker_left ? ls : rs;
      uint32_t d = attacker_left ? rs : ls;
      // visible labels in merged order, then tau
      for (size_t li = 1; li <= joint.labels.size(); ++li) {
        const Label& label = joint.labels[li % joint.labels.size()];
        auto wa = atk.weak_targets(a, label);
        if (wa.empty()) continue;
        auto wd = def.weak_targets(d, label);
        std::vector<uint32_t> defender_blocks;
        for (uint32_t x : wd)
          defender_blocks.push_back(block_at(sep - 1, !attacker_left, x));
        std::sort(defender_blocks.begin(), defender_blocks.end());
        uint32_t target = UINT32_MAX;
        for (uint32_t x : wa) {
          uint32_t b = block_at(sep - 1, attacker_left, x);
          if (!std::binary_search(defender_blocks.begin(), defender_blocks.end(), b)) {
            target = x;
            break;
          }
        }
        if (target == UINT32_MAX) continue;

        Witness::Position pos;
        pos.left_state = ls;
        pos.right_state = rs;
        pos.attacker = attacker_left ? Witness::Side::left : Witness::Side::right;
        pos.attack = label;
        pos.attack_target = target;
        for (uint32_t resp : wd) {
          uint32_t child = attacker_left ? build(target, resp) : build(resp, target);
          pos.responses.emplace_back(resp, child);
        }
        witness.positions[pos_id] = std::move(pos);
        return pos_id;
      }
    }
    throw Error("internal: no distinguishing attack found");
  }
};

uint64_t env_override(const char* name, uint64_t fallback) {
  if (const char* v = std::getenv(name)) {
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end && *end == '\0' && parsed > 0) return parsed;
  }
  return fallback;
}

}  // namespace

Verdict check_weak_bisim(std::shared_ptr<const Lts> left, std::shared_ptr<const Lts> right) {
  auto t0 = std::chrono::steady_clock::now();
  Joint joint(*left, *right);
  Condensation cond = condense(joint);
  RefinementResult ref = refine_weak(cond);

  Verdict v;
  v.left = left;
  v.right = right;
  v.stats.states_left = left->num_states;
  v.stats.states_right = right->num_states;
  v.stats.transitions_left = left->num_transitions();
  v.stats.transitions_right = right->num_transitions();
  v.stats.reduced_states = cond.num_comps;
  v.stats.blocks = ref.blocks;
  v.stats.iterations = ref.iterations;

  uint32_t lcomp = cond.comp[left->initial];
  uint32_t rcomp = cond.comp[joint.n_left + right->initial];
  v.equivalent = ref.rounds.back()[lcomp] == ref.rounds.back()[rcomp];
  if (!v.equivalent) {
    WitnessBuilder builder(joint, cond, ref, left, right);
    builder.build(left->initial, right->initial);
    v.witness = std::move(builder.witness);
  }
  v.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return v;
}

Verdict check_weak_bisim(const ProcessPtr& p, const ProcessPtr& q, const ExploreOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  Net net_l = compile(p);
  Net net_r = compile(q);

  ExploreOptions shared = opts;
  {
    std::vector<ChannelName> sends = net_l.send_channels();
    for (const auto& c : net_r.send_channels()) sends.push_back(c);
    for (const auto& c : opts.extra_send_channels) sends.push_back(c);
    std::sort(sends.begin(), sends.end());
    sends.erase(std::unique(sends.begin(), sends.end()), sends.end());
    shared.extra_send_channels = std::move(sends);
  }

  std::vector<std::string> alphabet = shared.alphabet;
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

  bool factorizable = alphabet.size() > 1 && (shared.semantics == SemanticsMode::set ||
                                              !shared.dup_budget.has_value());
  if (factorizable) {
    // Packets of distinct symbols never interact, so the full system is an
    // interleaving product of isomorphic single-symbol systems; above the
    // product-size threshold, check one representative symbol.
    ExploreOptions per = shared;
    per.alphabet = {alphabet.front()};
    Lts probe_l = explore(net_l, per);
    Lts probe_r = explore(net_r, per);
    const double limit = static_cast<double>(env_override("COMMNET_PRODUCT_LIMIT", 2'000'000));
    double product = std::pow(double(probe_l.num_states), double(alphabet.size())) +
                     std::pow(double(probe_r.num_states), double(alphabet.size()));
    if (product > limit) {
      auto v = check_weak_bisim(std::make_shared<Lts>(std::move(probe_l)),
                                std::make_shared<Lts>(std::move(probe_r)));
      v.stats.per_symbol = true;
      v.stats.checked_symbol = alphabet.front();
      v.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                  t0)
                            .count();
      return v;
    }
  }

  auto lts_l = std::make_shared<Lts>(explore(net_l, shared));
  auto lts_r = std::make_shared<Lts>(explore(net_r, shared));
  auto v = check_weak_bisim(std::move(lts_l), std::move(lts_r));
  v.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return v;
}

ProcessPtr attach_losers(const ProcessPtr& p, const std::vector<ChannelName>& channels) {
  std::vector<ProcessPtr> parts;
  for (const auto& c : channels) parts.push_back(Process::lose(c));
  parts.push_back(p);
  return normalize(Process::par(std::move(parts)));
}

Verdict check_up_to_loss(const ProcessPtr& p, const ProcessPtr& q,
                         const std::vector<ChannelName>& channels, const ExploreOptions& opts) {
  return check_weak_bisim(attach_losers(p, channels), attach_losers(q, channels), opts);
}

}  // namespace commnet
