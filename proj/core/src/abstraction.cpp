#include "commnet/abstraction.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "commnet/weak.hpp"

namespace commnet {

namespace {

using StateSet = std::vector<uint32_t>;  // sorted

StateSet closure_of(WeakLts& w, const StateSet& states) {
  StateSet out;
  for (uint32_t s : states) {
    const auto& cl = w.tau_closure(s);
    out.insert(out.end(), cl.begin(), cl.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// visible labels available from a tau-closed set, with successor sets
std::map<Label, StateSet> visible_steps(WeakLts& w, const StateSet& closed) {
  const Lts& lts = w.lts();
  std::map<Label, StateSet> out;
  for (uint32_t s : closed)
    for (uint32_t e = lts.row_offsets[s]; e < lts.row_offsets[s + 1]; ++e) {
      uint16_t lid = lts.edge_labels[e];
      if (lid == 0) continue;
      out[lts.labels[lid]].push_back(lts.edge_targets[e]);
    }
  for (auto& [label, set] : out) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    set = closure_of(w, set);
  }
  return out;
}

// Depth-bounded weak-trace inclusion via a determinized product walk.
// Returns the first trace of `a` that `b` cannot follow, if any.
std::optional<std::vector<Label>> trace_inclusion_gap(WeakLts& a, WeakLts& b, uint32_t depth) {
  struct Node {
    StateSet sa, sb;
    uint32_t remaining;
    std::vector<Label> prefix;
  };
  std::set<std::pair<StateSet, StateSet>> seen;  // determinized pairs already expanded
  std::vector<Node> queue;
  queue.push_back({closure_of(a, {a.lts().initial}), closure_of(b, {b.lts().initial}), depth, {}});
  seen.insert({queue[0].sa, queue[0].sb});
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    Node node = queue[qi];
    auto steps_a = visible_steps(a, node.sa);
    auto steps_b = visible_steps(b, node.sb);
    for (const auto& [label, next_a] : steps_a) {
      auto it = steps_b.find(label);
      std::vector<Label> trace = node.prefix;
      trace.push_back(label);
      if (it == steps_b.end()) return trace;
      if (node.remaining > 1 && seen.insert({next_a, it->second}).second)
        queue.push_back({next_a, it->second, node.remaining - 1, std::move(trace)});
    }
  }
  return std::nullopt;
}

}  // namespace

AbstractionReport validate_abstraction(const ProcessPtr& p, const ExploreOptions& opts_exact,
                                       const ExploreOptions& opts_set, uint32_t depth) {
  {
    auto norm = [](std::vector<std::string> v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      return v;
    };
    if (norm(opts_exact.alphabet) != norm(opts_set.alphabet) ||
        opts_exact.injection_budget != opts_set.injection_budget)
      throw Error("validate_abstraction: option sets must share alphabet and budgets");
  }
  ExploreOptions exact = opts_exact;
  exact.semantics = SemanticsMode::exact;
  ExploreOptions set = opts_set;
  set.semantics = SemanticsMode::set;

  Net net = compile(p);
  auto lts_exact = std::make_shared<Lts>(explore(net, exact));
  auto lts_set = std::make_shared<Lts>(explore(net, set));

  AbstractionReport report;
  report.depth = depth;
  report.dup_bound = exact.dup_budget;
  report.exact_states = lts_exact->num_states;
  report.set_states = lts_set->num_states;

  size_t elided = 0;
  for (const auto& t : net.transitions) {
    size_t self = std::count(t.targets.begin(), t.targets.end(), t.source);
    if (t.targets.size() == 2 && self == 2) ++elided;
  }
  if (elided)
    report.note = "set semantics elides " + std::to_string(elided) +
                  " duplicator transition(s) (their firings are no-ops on set markings)";

  WeakLts weak_exact(lts_exact), weak_set(lts_set);
  if (auto gap = trace_inclusion_gap(weak_exact, weak_set, depth)) {
    report.exact_in_set = false;
    report.counterexample = *gap;
    report.counterexample_direction = "exact into set";
  } else {
    report.exact_in_set = true;
  }
  if (report.exact_in_set) {
    if (auto gap = trace_inclusion_gap(weak_set, weak_exact, depth)) {
      report.set_in_exact = false;
      report.counterexample = *gap;
      report.counterexample_direction = "set into exact";
    } else {
      report.set_in_exact = true;
    }
  }
  return report;
}

}  // namespace commnet
