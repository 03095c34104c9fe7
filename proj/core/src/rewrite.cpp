#include "commnet/rewrite.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "commnet/parse.hpp"
#include "commnet/procspec.hpp"

namespace commnet {

namespace {

// ---------------------------------------------------------------------------
// Scope tree over the structural normal form: each node is one restriction
// path (a maximal chain of binders) holding the parallel components directly
// in its scope plus nested scopes.

struct ScopeNode {
  std::vector<ChannelName> binders;       // chain entered from the parent
  std::vector<ChannelName> full_path;     // binders from the root
  std::vector<ProcessPtr> components;     // distribute nodes
  std::vector<ScopeNode> children;
};

ScopeNode build_scope(const ProcessPtr& term, std::vector<ChannelName> path_prefix) {
  ScopeNode node;
  ProcessPtr p = term;
  while (p->kind() == Process::Kind::restriction) {
    node.binders.push_back(p->channel());
    p = p->body();
  }
  node.full_path = std::move(path_prefix);
  node.full_path.insert(node.full_path.end(), node.binders.begin(), node.binders.end());
  auto add = [&](const ProcessPtr& c) {
    if (c->kind() == Process::Kind::distribute)
      node.components.push_back(c);
    else if (c->kind() == Process::Kind::restriction)
      node.children.push_back(build_scope(c, node.full_path));
    else if (c->kind() != Process::Kind::stop)
      throw Error("internal: scope tree expects a structurally normalized term");
  };
  if (p->kind() == Process::Kind::par)
    for (const auto& c : p->children()) add(c);
  else
    add(p);
  return node;
}

ProcessPtr rebuild_scope(const ScopeNode& node) {
  std::vector<ProcessPtr> parts = node.components;
  for (const auto& child : node.children) parts.push_back(rebuild_scope(child));
  ProcessPtr body = parts.empty() ? Process::stop()
                    : parts.size() == 1 ? parts[0]
                                        : Process::par(std::move(parts));
  for (auto it = node.binders.rbegin(); it != node.binders.rend(); ++it)
    body = Process::restriction(*it, body);
  return body;
}

template <class F>
void visit_scopes(ScopeNode& node, std::vector<ScopeNode*>& ancestors, F&& fn) {
  fn(node, ancestors);
  ancestors.push_back(&node);
  for (auto& child : node.children) visit_scopes(child, ancestors, fn);
  ancestors.pop_back();
}

// ---------------------------------------------------------------------------
// Instantiation helpers

ChannelName lookup_channel(const Instantiation& inst, const std::string& var) {
  auto it = inst.channels.find(var);
  if (it == inst.channels.end())
    throw RewriteError(RewriteError::Kind::no_match, "unbound channel metavariable '" + var + "'");
  return it->second;
}

const std::vector<ChannelName>& lookup_list(const Instantiation& inst, const std::string& var) {
  auto it = inst.lists.find(var);
  if (it == inst.lists.end())
    throw RewriteError(RewriteError::Kind::no_match, "unbound list metavariable '" + var + "'");
  return it->second;
}

ProcessPtr instantiate_pattern(const PatternComponent& pat, const Instantiation& inst) {
  ChannelName src = lookup_channel(inst, pat.source);
  std::vector<ChannelName> targets;
  if (pat.target_list) {
    targets = lookup_list(inst, *pat.target_list);
  } else {
    for (const auto& v : pat.targets) targets.push_back(lookup_channel(inst, v));
  }
  return Process::distribute(std::move(src), std::move(targets));
}

std::vector<ProcessPtr> instantiate_templates(const std::vector<TemplateComponent>& templates,
                                              const Instantiation& inst) {
  std::vector<ProcessPtr> out;
  for (const auto& t : templates) {
    if (t.mode == TemplateComponent::Mode::direct) {
      ChannelName src = lookup_channel(inst, t.source);
      std::vector<ChannelName> targets;
      for (const auto& v : t.targets) targets.push_back(lookup_channel(inst, v));
      out.push_back(Process::distribute(std::move(src), std::move(targets)));
    } else {
      ChannelName src = lookup_channel(inst, t.source);
      for (const auto& elem : lookup_list(inst, t.list_var))
        out.push_back(Process::distribute(src, {elem}));
    }
  }
  return out;
}

// Required side-condition components, deduplicated.
std::vector<ProcessPtr> side_components(const Lemma& lemma, const Instantiation& inst) {
  std::vector<ProcessPtr> out;
  auto push = [&](const ProcessPtr& c) {
    for (const auto& seen : out)
      if (equal(seen, c)) return;
    out.push_back(c);
  };
  for (const auto& sc : lemma.side_conditions) {
    std::vector<ChannelName> channels;
    if (sc.per_list)
      channels = lookup_list(inst, sc.var);
    else
      channels = {lookup_channel(inst, sc.var)};
    for (const auto& c : channels) {
      if (sc.kind == SideCondition::Kind::duplicator)
        push(Process::distribute(c, {c, c}));
      else
        push(Process::distribute(c, {}));
    }
  }
  return out;
}

std::string describe_component(const ProcessPtr& c) {
  if (c->kind() == Process::Kind::distribute) {
    if (c->targets().empty()) return "?" + c->channel();
    if (c->targets().size() == 2 && c->targets()[0] == c->channel() &&
        c->targets()[1] == c->channel())
      return "+" + c->channel();
  }
  return to_string(c);
}

// ---------------------------------------------------------------------------
// Matching: unify one side's patterns against a sub-multiset of a scope's
// components.

bool bind_channel(Instantiation& inst, const std::string& var, const ChannelName& value) {
  auto [it, fresh] = inst.channels.emplace(var, value);
  return fresh || it->second == value;
}

bool bind_list(Instantiation& inst, const std::string& var,
               const std::vector<ChannelName>& value) {
  auto [it, fresh] = inst.lists.emplace(var, value);
  return fresh || it->second == value;
}

bool unify(const PatternComponent& pat, const ProcessPtr& comp, Instantiation& inst) {
  if (comp->kind() != Process::Kind::distribute) return false;
  if (!bind_channel(inst, pat.source, comp->channel())) return false;
  if (pat.target_list) return bind_list(inst, *pat.target_list, comp->targets());
  if (pat.targets.size() != comp->targets().size()) return false;
  for (size_t i = 0; i < pat.targets.size(); ++i)
    if (!bind_channel(inst, pat.targets[i], comp->targets()[i])) return false;
  return true;
}

struct ComponentMatch {
  std::vector<size_t> indices;  // matched component indices, pattern order
  Instantiation inst;
};

void match_multiset(const std::vector<PatternComponent>& patterns,
                    const std::vector<ProcessPtr>& components, size_t pat_index,
                    std::vector<size_t>& chosen, std::vector<bool>& used,
                    const Instantiation& inst, std::vector<ComponentMatch>& out) {
  if (pat_index == patterns.size()) {
    out.push_back({chosen, inst});
    return;
  }
  for (size_t i = 0; i < components.size(); ++i) {
    if (used[i]) continue;
    Instantiation attempt = inst;
    if (!unify(patterns[pat_index], components[i], attempt)) continue;
    used[i] = true;
    chosen.push_back(i);
    match_multiset(patterns, components, pat_index + 1, chosen, used, attempt, out);
    chosen.pop_back();
    used[i] = false;
  }
}

// Patterns for the side being matched; backward list lemmas expand through
// the hinted list binding (synthetic vars `<list>[i]` pre-bound in the seed).
std::pair<std::vector<PatternComponent>, Instantiation> matching_side(const Lemma& lemma,
                                                                      Direction dir,
                                                                      const Instantiation& hint) {
  if (dir == Direction::forward) return {lemma.lhs, hint};
  std::vector<PatternComponent> patterns;
  Instantiation seed = hint;
  for (const auto& t : lemma.rhs) {
    if (t.mode == TemplateComponent::Mode::direct) {
      patterns.push_back({t.source, t.targets, std::nullopt});
      continue;
    }
    auto it = hint.lists.find(t.list_var);
    if (it == hint.lists.end())
      throw RewriteError(RewriteError::Kind::no_match,
                         "backward application of '" + lemma.name +
                             "' needs the list metavariable '" + t.list_var + "' instantiated");
    for (size_t i = 0; i < it->second.size(); ++i) {
      std::string var = t.list_var + "[" + std::to_string(i) + "]";
      seed.channels[var] = it->second[i];
      patterns.push_back({t.source, {var}, std::nullopt});
    }
  }
  return {patterns, seed};
}

bool witnessed_in_scopes(const ProcessPtr& component, const ScopeNode& scope,
                         const std::vector<ScopeNode*>& ancestors,
                         const std::vector<size_t>& consumed_in_scope) {
  const ChannelName& channel = component->channel();
  // innermost scope first; a binder for the channel ends the search outward
  const ScopeNode* nodes_inner_to_outer[1] = {&scope};
  (void)nodes_inner_to_outer;
  auto contains = [&](const ScopeNode& s, bool skip_consumed) {
    for (size_t i = 0; i < s.components.size(); ++i) {
      if (skip_consumed &&
          std::find(consumed_in_scope.begin(), consumed_in_scope.end(), i) !=
              consumed_in_scope.end())
        continue;
      if (equal(s.components[i], component)) return true;
    }
    return false;
  };
  auto binds = [&](const ScopeNode& s) {
    return std::find(s.binders.begin(), s.binders.end(), channel) != s.binders.end();
  };
  if (contains(scope, true)) return true;
  if (binds(scope)) return false;
  for (auto it = ancestors.rbegin(); it != ancestors.rend(); ++it) {
    if (contains(**it, false)) return true;
    if (binds(**it)) return false;
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Builtin catalog

const std::vector<Lemma>& builtin_lemmas() {
  static const std::vector<Lemma> catalog = [] {
    std::vector<Lemma> ls;

    // a => [b]  <->  a -> b (definitional; both sides are the same core term)
    {
      Lemma l;
      l.name = "bridge_is_unary_distributor";
      l.lhs = {{"a", {"b"}, std::nullopt}};
      l.rhs = {{TemplateComponent::Mode::direct, "a", {"b"}, ""}};
      ls.push_back(std::move(l));
    }

    // *a  <->  ?a || +a (definitional at the core level)
    {
      Lemma l;
      l.name = "duploser_decomposition";
      l.lhs = {{"a", {}, std::nullopt}, {"a", {"a", "a"}, std::nullopt}};
      l.rhs = {{TemplateComponent::Mode::direct, "a", {}, ""},
               {TemplateComponent::Mode::direct, "a", {"a", "a"}, ""}};
      ls.push_back(std::move(l));
    }

    // a => [b1..bn]  <->  a -> b1 || ... || a -> bn, provided a has a
    // duplicator and every bi a loser beside the match.
    {
      Lemma l;
      l.name = "distributor_splitting";
      l.lhs = {{"a", {}, std::string("bs")}};
      l.rhs = {{TemplateComponent::Mode::per_list_element, "a", {}, "bs"}};
      l.side_conditions = {{SideCondition::Kind::duplicator, "a", false},
                           {SideCondition::Kind::loser, "bs", true}};
      ls.push_back(std::move(l));
    }

    return ls;
  }();
  return catalog;
}

const Lemma& lemma_by_name(const std::string& name) {
  for (const auto& l : builtin_lemmas())
    if (l.name == name) return l;
  throw RewriteError(RewriteError::Kind::bad_script, "unknown lemma '" + name + "'");
}

// ---------------------------------------------------------------------------

ApplyResult match_and_apply(const ProcessPtr& p, const Lemma& lemma, const Position& pos,
                            Direction dir, const Instantiation& hint) {
  ProcessPtr flat = flatten(p);
  ScopeNode root = build_scope(flat, {});
  auto [patterns, seed] = matching_side(lemma, dir, hint);

  struct FullMatch {
    ScopeNode* scope;
    std::vector<ScopeNode*> ancestors;
    std::vector<size_t> indices;
    Instantiation inst;
    std::string dedupe_key;
  };
  std::vector<FullMatch> matches;
  std::vector<std::string> missing_conditions;
  std::vector<std::string> seen_sources;

  std::vector<ScopeNode*> ancestors;
  visit_scopes(root, ancestors, [&](ScopeNode& scope, const std::vector<ScopeNode*>& up) {
    if (!pos.scope_path.empty()) {
      if (scope.full_path.size() < pos.scope_path.size()) return;
      if (!std::equal(pos.scope_path.begin(), pos.scope_path.end(), scope.full_path.begin()))
        return;
    }
    for (const auto& c : scope.components)
      if (c->kind() == Process::Kind::distribute) seen_sources.push_back(c->channel());

    std::vector<ComponentMatch> found;
    std::vector<size_t> chosen;
    std::vector<bool> used(scope.components.size(), false);
    match_multiset(patterns, scope.components, 0, chosen, used, seed, found);
    for (auto& m : found) {
      bool ok = true;
      for (const auto& sc : side_components(lemma, m.inst)) {
        if (!witnessed_in_scopes(sc, scope, up, m.indices)) {
          missing_conditions.push_back(describe_component(sc));
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::string key;
      for (const auto& [k, v] : m.inst.channels) key += k + "=" + v + ";";
      for (const auto& [k, v] : m.inst.lists) {
        key += k + "=[";
        for (const auto& c : v) key += c + ",";
        key += "];";
      }
      std::vector<std::string> comps;
      for (size_t i : m.indices) comps.push_back(canonical_key(scope.components[i]));
      std::sort(comps.begin(), comps.end());
      for (const auto& c : comps) key += c + "&";
      for (const auto& b : scope.full_path) key += "/" + b;
      bool duplicate = false;
      for (const auto& prev : matches)
        if (prev.dedupe_key == key) duplicate = true;
      if (!duplicate) matches.push_back({&scope, up, m.indices, std::move(m.inst), key});
    }
  });

  if (matches.empty()) {
    if (!missing_conditions.empty()) {
      std::string what = "side condition unmet for lemma '" + lemma.name + "': missing";
      std::sort(missing_conditions.begin(), missing_conditions.end());
      missing_conditions.erase(std::unique(missing_conditions.begin(), missing_conditions.end()),
                               missing_conditions.end());
      for (const auto& m : missing_conditions) what += " " + m;
      throw RewriteError(RewriteError::Kind::side_condition_unmet, what);
    }
    std::string what = "no match for lemma '" + lemma.name + "'";
    if (auto it = hint.channels.find(lemma.lhs.front().source); it != hint.channels.end())
      what += " with source " + it->second;
    std::sort(seen_sources.begin(), seen_sources.end());
    seen_sources.erase(std::unique(seen_sources.begin(), seen_sources.end()), seen_sources.end());
    if (!seen_sources.empty()) {
      what += "; component sources in scope:";
      for (const auto& s : seen_sources) what += " " + s;
    }
    throw RewriteError(RewriteError::Kind::no_match, what);
  }

  size_t pick = 0;
  if (pos.occurrence) {
    if (*pos.occurrence >= matches.size())
      throw RewriteError(RewriteError::Kind::no_match,
                         "occurrence " + std::to_string(*pos.occurrence) + " out of range (" +
                             std::to_string(matches.size()) + " matches)");
    pick = *pos.occurrence;
  } else if (matches.size() > 1) {
    throw RewriteError(RewriteError::Kind::ambiguous_match,
                       "lemma '" + lemma.name + "' matches " + std::to_string(matches.size()) +
                           " positions; add an occurrence index or instantiation");
  }

  FullMatch& m = matches[pick];
  // replace the matched components with the instantiated other side
  std::vector<ProcessPtr> replaced;
  for (size_t i = 0; i < m.scope->components.size(); ++i)
    if (std::find(m.indices.begin(), m.indices.end(), i) == m.indices.end())
      replaced.push_back(m.scope->components[i]);
  std::vector<ProcessPtr> inserted;
  if (dir == Direction::forward) {
    inserted = instantiate_templates(lemma.rhs, m.inst);
  } else {
    for (const auto& pat : lemma.lhs) inserted.push_back(instantiate_pattern(pat, m.inst));
  }
  for (auto& c : inserted) replaced.push_back(std::move(c));
  m.scope->components = std::move(replaced);

  ApplyResult result;
  result.result = flatten(rebuild_scope(root));
  result.scope_path = m.scope->full_path;
  // drop synthetic `list[i]` bindings from the reported instantiation
  for (auto it = m.inst.channels.begin(); it != m.inst.channels.end();)
    if (it->first.find('[') != std::string::npos)
      it = m.inst.channels.erase(it);
    else
      ++it;
  result.instantiation = std::move(m.inst);
  return result;
}

std::pair<ProcessPtr, ProcessPtr> lemma_instance_sides(const Lemma& lemma,
                                                       const Instantiation& inst) {
  std::vector<ProcessPtr> lhs_parts = side_components(lemma, inst);
  std::vector<ProcessPtr> rhs_parts = lhs_parts;
  for (const auto& pat : lemma.lhs) lhs_parts.push_back(instantiate_pattern(pat, inst));
  for (auto& c : instantiate_templates(lemma.rhs, inst)) rhs_parts.push_back(std::move(c));
  return {Process::par(std::move(lhs_parts)), Process::par(std::move(rhs_parts))};
}

Verdict validate_lemma_instance(const Lemma& lemma, const Instantiation& inst,
                                const ExploreOptions& opts) {
  auto [lhs, rhs] = lemma_instance_sides(lemma, inst);
  return check_weak_bisim(lhs, rhs, opts);
}

// ---------------------------------------------------------------------------

ProofTrace run_script(const ProofScript& script) {
  ProofTrace trace;
  trace.start = script.start;
  ProcessPtr current = flatten(script.start);
  for (size_t i = 0; i < script.steps.size(); ++i) {
    const auto& step = script.steps[i];
    const Lemma& lemma = lemma_by_name(step.lemma);
    TraceStep ts;
    ts.lemma = step.lemma;
    ts.direction = step.direction;
    ts.before = current;
    ApplyResult applied;
    try {
      applied = match_and_apply(current, lemma, step.position, step.direction,
                                step.instantiation);
    } catch (RewriteError& e) {
      throw RewriteError(e.kind, "step " + std::to_string(i + 1) + ": " + e.what());
    }
    current = applied.result;
    ts.after = current;
    ts.instantiation = applied.instantiation;
    ts.scope_path = applied.scope_path;
    if (script.validation != ValidationMode::none) {
      ts.validation = validate_lemma_instance(lemma, applied.instantiation, script.options);
      if (!ts.validation->equivalent) {
        trace.steps.push_back(std::move(ts));
        throw RewriteError(RewriteError::Kind::step_invalid,
                           "step " + std::to_string(i + 1) + ": lemma instance of '" +
                               step.lemma + "' is not a weak bisimilarity at these options");
      }
    }
    trace.steps.push_back(std::move(ts));
  }
  trace.end = current;

  ProcessPtr got = normalize(current);
  ProcessPtr want = normalize(script.end);
  if (!equal(got, want))
    throw RewriteError(RewriteError::Kind::end_mismatch,
                       "end mismatch:\n  script result: " + to_string(got) +
                           "\n  declared end:  " + to_string(want));

  if (script.validation == ValidationMode::full) {
    trace.whole_term_validation = check_weak_bisim(script.start, current, script.options);
    if (!trace.whole_term_validation->equivalent)
      throw RewriteError(RewriteError::Kind::step_invalid,
                         "whole-term validation failed: start and end are not weakly bisimilar");
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Script format (line oriented, `#` comments):
//   semantics set|exact        alphabet N|s1,s2   budget N
//   cap N                      cap-policy error|clamp
//   dup-budget N               state-limit N
//   validate none|instances|full
//   start SPEC [loss=c1,c2]    end SPEC [loss=c1,c2]
//   step LEMMA forward|backward [at a.b.c] [occurrence N] [x=chan] [xs=[c1,c2]]

namespace {

std::vector<std::string> tokenize_line(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : line) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) toks.push_back(std::move(cur));
  return toks;
}

std::vector<ChannelName> split_channels(const std::string& s) {
  std::vector<ChannelName> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

ProofScript parse_proof_script(const std::string& text, const std::string& base_dir) {
  ProofScript script;
  script.options.alphabet = default_alphabet(1);
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool have_start = false, have_end = false;
  auto fail = [&](const std::string& msg) -> RewriteError {
    return RewriteError(RewriteError::Kind::bad_script,
                        "proof script line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto toks = tokenize_line(raw);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    auto need = [&](size_t n) {
      if (toks.size() < n + 1) throw fail("'" + head + "' needs an argument");
    };
    if (head == "semantics") {
      need(1);
      if (toks[1] == "set")
        script.options.semantics = SemanticsMode::set;
      else if (toks[1] == "exact")
        script.options.semantics = SemanticsMode::exact;
      else
        throw fail("semantics must be set or exact");
    } else if (head == "alphabet") {
      need(1);
      script.options.alphabet = parse_alphabet_spec(toks[1]);
    } else if (head == "budget") {
      need(1);
      script.options.injection_budget = static_cast<uint32_t>(std::stoul(toks[1]));
    } else if (head == "cap") {
      need(1);
      script.options.capacity_cap = static_cast<uint32_t>(std::stoul(toks[1]));
    } else if (head == "cap-policy") {
      need(1);
      if (toks[1] == "error")
        script.options.cap_policy = CapPolicy::error;
      else if (toks[1] == "clamp")
        script.options.cap_policy = CapPolicy::clamp;
      else
        throw fail("cap-policy must be error or clamp");
    } else if (head == "dup-budget") {
      need(1);
      script.options.dup_budget = static_cast<uint32_t>(std::stoul(toks[1]));
    } else if (head == "state-limit") {
      need(1);
      script.options.state_limit = std::stoull(toks[1]);
    } else if (head == "validate") {
      need(1);
      if (toks[1] == "none")
        script.validation = ValidationMode::none;
      else if (toks[1] == "instances")
        script.validation = ValidationMode::instances;
      else if (toks[1] == "full")
        script.validation = ValidationMode::full;
      else
        throw fail("validate must be none, instances or full");
    } else if (head == "start" || head == "end") {
      need(1);
      std::string spec = toks[1];
      if (spec.rfind("process:", 0) == 0) {
        // inline text: everything after the first colon on the raw line
        auto at = raw.find("process:");
        spec = raw.substr(at);
      }
      ProcessPtr proc;
      try {
        proc = resolve_process_spec(spec, base_dir);
      } catch (const ParseError& e) {
        throw fail(std::string("bad process: ") + e.what());
      } catch (const Error& e) {
        throw fail(e.what());
      }
      for (size_t i = 2; i < toks.size(); ++i) {
        if (toks[i].rfind("loss=", 0) == 0)
          proc = attach_losers(proc, split_channels(toks[i].substr(5)));
        else if (spec.rfind("process:", 0) != 0)
          throw fail("unexpected token '" + toks[i] + "'");
      }
      if (head == "start") {
        script.start = proc;
        have_start = true;
      } else {
        script.end = proc;
        have_end = true;
      }
    } else if (head == "step") {
      need(2);
      ProofStep step;
      step.lemma = toks[1];
      if (toks[2] == "forward")
        step.direction = Direction::forward;
      else if (toks[2] == "backward")
        step.direction = Direction::backward;
      else
        throw fail("step direction must be forward or backward");
      for (size_t i = 3; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        if (t == "at") {
          if (++i >= toks.size()) throw fail("'at' needs a scope path");
          std::string path = toks[i];
          std::string cur;
          for (char c : path) {
            if (c == '.') {
              step.position.scope_path.push_back(cur);
              cur.clear();
            } else {
              cur += c;
            }
          }
          if (!cur.empty()) step.position.scope_path.push_back(cur);
        } else if (t == "occurrence") {
          if (++i >= toks.size()) throw fail("'occurrence' needs an index");
          step.position.occurrence = static_cast<uint32_t>(std::stoul(toks[i]));
        } else {
          auto eq = t.find('=');
          if (eq == std::string::npos) throw fail("expected VAR=CHANNEL, got '" + t + "'");
          std::string var = t.substr(0, eq);
          std::string value = t.substr(eq + 1);
          if (!value.empty() && value.front() == '[') {
            if (value.back() != ']') throw fail("unterminated list in '" + t + "'");
            step.instantiation.lists[var] = split_channels(value.substr(1, value.size() - 2));
          } else {
            step.instantiation.channels[var] = value;
          }
        }
      }
      script.steps.push_back(std::move(step));
    } else {
      throw fail("unknown directive '" + head + "'");
    }
  }
  if (!have_start) throw RewriteError(RewriteError::Kind::bad_script, "proof script: no start");
  if (!have_end) throw RewriteError(RewriteError::Kind::bad_script, "proof script: no end");
  return script;
}

ProofScript load_proof_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open proof script: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string dir = ".";
  auto slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash);
  return parse_proof_script(buf.str(), dir);
}

}  // namespace commnet
