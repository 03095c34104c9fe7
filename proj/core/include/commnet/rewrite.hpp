#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "commnet/bisim.hpp"
#include "commnet/process.hpp"

namespace commnet {

/// A parallel-component pattern: a distributor whose source is a channel
/// metavariable and whose targets are either fixed metavariables (may repeat,
/// forcing equal channels) or a single list metavariable.
struct PatternComponent {
  std::string source;
  std::vector<std::string> targets;        // used when target_list is empty
  std::optional<std::string> target_list;  // binds a whole target list
};

/// Component template for the instantiated side of a lemma.
struct TemplateComponent {
  enum class Mode {
    direct,            // distribute(source, targets)
    per_list_element,  // one bridge source -> b per element b of list_var
  };
  Mode mode = Mode::direct;
  std::string source;
  std::vector<std::string> targets;
  std::string list_var;
};

struct SideCondition {
  enum class Kind { duplicator, loser };
  Kind kind = Kind::loser;
  std::string var;        // channel metavariable, or list metavariable when per_list
  bool per_list = false;  // one condition per element of the list variable
};

/// A named equivalence schema between two parallel compositions of
/// components, under side conditions that must be witnessed by co-located
/// components (required present, not consumed).
struct Lemma {
  std::string name;
  std::vector<PatternComponent> lhs;
  std::vector<TemplateComponent> rhs;
  std::vector<SideCondition> side_conditions;
};

/// The shipped catalog: bridge_is_unary_distributor, duploser_decomposition,
/// distributor_splitting. AC and unit laws are implicit in normalization.
const std::vector<Lemma>& builtin_lemmas();
const Lemma& lemma_by_name(const std::string& name);

struct Instantiation {
  std::map<std::string, ChannelName> channels;
  std::map<std::string, std::vector<ChannelName>> lists;

  bool operator==(const Instantiation&) const = default;
};

/// Selects a sub-multiset of parallel components under a restriction path of
/// the (structurally normalized) term. An empty selector means "the unique
/// match"; scope_path narrows to scopes whose binder-name path has the given
/// prefix, occurrence picks the n-th match in deterministic order.
struct Position {
  std::vector<ChannelName> scope_path;
  std::optional<uint32_t> occurrence;
};

enum class Direction { forward, backward };

struct ApplyResult {
  ProcessPtr result;
  Instantiation instantiation;
  std::vector<ChannelName> scope_path;  // where the match was applied
};

/// Applies one lemma step at the selected position, matching modulo AC of
/// parallel composition. Side-condition witnesses may sit in the match's
/// scope or any enclosing scope on its restriction path. A partial
/// instantiation in `hint` filters candidate matches (backward applications
/// of list lemmas need the list fixed). Throws RewriteError:
/// no_match / ambiguous_match / side_condition_unmet.
ApplyResult match_and_apply(const ProcessPtr& p, const Lemma& lemma, const Position& pos,
                            Direction dir, const Instantiation& hint = {});

/// Closed-instance validation: explores lhs and rhs together with their
/// side-condition components as closed processes and checks weak bisimilarity.
Verdict validate_lemma_instance(const Lemma& lemma, const Instantiation& inst,
                                const ExploreOptions& opts);

/// Builds the two closed processes compared by validate_lemma_instance.
std::pair<ProcessPtr, ProcessPtr> lemma_instance_sides(const Lemma& lemma,
                                                       const Instantiation& inst);

enum class ValidationMode { none, instances, full };

struct ProofStep {
  std::string lemma;
  Direction direction = Direction::forward;
  Position position;
  Instantiation instantiation;  // may be partial; acts as a match filter
};

struct ProofScript {
  ProcessPtr start;
  ProcessPtr end;
  std::vector<ProofStep> steps;
  ExploreOptions options;
  ValidationMode validation = ValidationMode::instances;
};

struct TraceStep {
  std::string lemma;
  Direction direction;
  Instantiation instantiation;
  std::vector<ChannelName> scope_path;
  ProcessPtr before;
  ProcessPtr after;
  std::optional<Verdict> validation;
};

struct ProofTrace {
  ProcessPtr start;
  ProcessPtr end;
  std::vector<TraceStep> steps;
  std::optional<Verdict> whole_term_validation;
};

/// Applies the script's steps in order, validating each lemma instance per
/// the script's validation mode (failing fast on an invalid one), and checks
/// that the final term normalize-equals the declared end term (EndMismatch
/// otherwise, with a diff of the normal forms).
ProofTrace run_script(const ProofScript& script);

/// Parses the plain-text proof script format (see README). Relative file
/// references resolve against base_dir.
ProofScript parse_proof_script(const std::string& text, const std::string& base_dir);
ProofScript load_proof_script(const std::string& path);

}  // namespace commnet
