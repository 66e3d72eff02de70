#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "procalc/profile.hpp"
#include "procalc/term.hpp"
#include "procalc/term_ops.hpp"

namespace procalc {

namespace label {
/// Internal action, possibly prioritized (CCS^sg) or guarded (CPG).
struct Tau {
  Level level = Level::Ordinary;
  GuardSet guard;
  auto operator<=>(const Tau&) const = default;
  bool operator==(const Tau&) const = default;
};
/// Visible CCS-family action.
struct Act {
  Name name;
  Polarity polarity = Polarity::In;
  Level level = Level::Ordinary;
  GuardSet guard;
  auto operator<=>(const Act&) const = default;
  bool operator==(const Act&) const = default;
};
/// Free or bound output; `extruded` lists payload names whose scope opens.
struct Out {
  Tuple subject;
  Tuple payload;
  NameSet extruded;
  auto operator<=>(const Out&) const = default;
  bool operator==(const Out&) const = default;
};
/// Early input: `received` is the instantiated tuple.
struct In {
  Tuple subject;
  Tuple received;
  auto operator<=>(const In&) const = default;
  bool operator==(const In&) const = default;
};
struct Kill {
  KillerLabel label;
  auto operator<=>(const Kill&) const = default;
  bool operator==(const Kill&) const = default;
};
} // namespace label

using Label = std::variant<label::Tau, label::Act, label::Out, label::In, label::Kill>;

/// Visible labels are potential interactions with the environment. Guards do
/// not affect visibility; kills are internal.
bool is_visible(const Label& l);

/// Names mentioned by a label (subjects, payloads, received names).
NameSet label_names(const Label& l);

struct Step {
  Label label;
  Term target;
  auto operator<=>(const Step&) const = default;
  bool operator==(const Step&) const = default;
};

struct SosOptions {
  /// Names the environment is already known to share with the process. The
  /// early-input universe is fn(t) plus these, plus one fresh name per
  /// pattern position.
  NameSet known_names;
  /// Maximum replicas any single `!P` may spawn along a path.
  unsigned max_bang_unfold = 3;
};

struct StepSet {
  std::vector<Step> steps;  // sorted, duplicate-free
  /// Set when replication stopped short of `max_bang_unfold`; the step list
  /// is then a lower bound.
  bool truncated = false;
};

/// All one-step transitions of `t` under the profile's semantics. Targets are
/// alpha-canonical. Throws ProfileError, SemanticError or ContextError.
StepSet transitions(const Term& t, const CalculusProfile& p, const SosOptions& opts = {});

// Per-calculus entry points.
StepSet transitions_ccs(const Term& t, const DefinitionEnv& env);
StepSet transitions_pimpm(const Term& t, const SosOptions& opts = {});
StepSet transitions_bccsp(const Term& t, const PriorityOrder& order);
StepSet transitions_cpg(const Term& t, const DefinitionEnv& env);
enum class PriorityVariant { Sg, Prio };
StepSet transitions_ccs_priority(const Term& t, const DefinitionEnv& env, PriorityVariant v);
StepSet transitions_cows(const Term& t, const SosOptions& opts = {});

/// The least substitution instantiating the pattern's placeholders so that it
/// equals `tuple`, or nullopt when lengths differ or a protected name faces a
/// different name.
std::optional<Substitution> match_pattern(const Pattern& pat, const Tuple& tuple);

/// A visible CPG action, guard stripped.
struct Offer {
  Name name;
  Polarity polarity;
  auto operator<=>(const Offer&) const = default;
  bool operator==(const Offer&) const = default;
};

/// Actions `t` offers to its environment, ignoring guard side-conditions.
std::set<Offer> cpg_offers(const Term& t, const DefinitionEnv& env = {});

/// The residual of a COWS term whose enclosing scope executed a kill.
Term halt(const Term& t);

/// BCCSP action spelling used by priority orders: `tau`, `a`, `'a`.
std::string order_key(const Label& l);

} // namespace procalc
