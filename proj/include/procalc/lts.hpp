#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "procalc/profile.hpp"
#include "procalc/sos.hpp"
#include "procalc/surface.hpp"
#include "procalc/term.hpp"

namespace procalc {

struct ExplorationBounds {
  std::size_t max_states = 10000;
  std::size_t max_depth = 64;
  unsigned max_bang_unfold = 3;

  ExplorationBounds scaled(unsigned factor) const {
    return {max_states * factor, max_depth * factor, max_bang_unfold * factor};
  }
  bool operator==(const ExplorationBounds&) const = default;
};

struct Edge {
  std::size_t src = 0;
  Label label;
  std::size_t dst = 0;
  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;
};

/// Explored transition graph. A state is a canonical term together with the
/// names the environment already shares with it (empty outside the
/// name-passing calculi); the latter fixes the early-input universe.
struct Lts {
  struct State {
    Term term;
    NameSet known;
    bool expanded = false;  // all outgoing transitions recorded
    std::size_t depth = 0;
  };

  Calculus calculus = Calculus::Ccs;
  std::vector<State> states;
  std::size_t root = 0;
  std::vector<Edge> edges;
  bool complete = false;
  ExplorationBounds bounds;
  /// First bound that cut exploration: "max_states", "max_depth" or
  /// "max_bang_unfold". Empty when complete.
  std::string cut_reason;

  const std::vector<std::size_t>& outgoing(std::size_t s) const { return out_[s]; }
  std::size_t size() const { return states.size(); }

  /// Rebuilds the adjacency index after `edges` changed.
  void index();

  /// A hand-made graph, all states expanded; for tests and tools that
  /// work on abstract systems.
  static Lts from_edges(std::size_t n, std::size_t root, std::vector<Edge> edges);

private:
  std::vector<std::vector<std::size_t>> out_;
};

/// Breadth-first closure of `t` under transitions(). `extra_names` joins the
/// root's known set (ignored outside the name-passing calculi). Throws
/// ProfileError/ContextError before exploring; SemanticError may surface
/// from definitions.
Lts explore(const Term& t, const CalculusProfile& p, const ExplorationBounds& b = {},
            const NameSet& extra_names = {});

/// Explores two processes over a common input universe (the union of their
/// free names), as simulation requires.
std::pair<Lts, Lts> explore_pair(const Term& q, const Term& p, const CalculusProfile& prof,
                                 const ExplorationBounds& b = {});

struct Verdict {
  enum class Kind { Holds, Fails, Unknown };
  Kind kind = Kind::Unknown;
  /// Holds: tau steps followed by the witnessing visible step.
  std::vector<Step> trace;
  /// Unknown: the bound that prevented a decision.
  std::string reason;

  bool holds() const { return kind == Kind::Holds; }
  bool fails() const { return kind == Kind::Fails; }
  bool unknown() const { return kind == Kind::Unknown; }
  static Verdict negate(const Verdict& v);
};

std::string_view to_string(Verdict::Kind k);

/// States reachable from `s` through invisible edges only (s included).
std::vector<std::size_t> weak_reach(const Lts& l, std::size_t s);

Verdict can_perform(const Lts& l, std::size_t s, const LabelPattern& alpha);
Verdict is_visible(const Lts& l, std::size_t s);
Verdict is_invisible(const Lts& l, std::size_t s);

Verdict can_perform(const Term& t, const CalculusProfile& p, const ExplorationBounds& b,
                    const LabelPattern& alpha);
Verdict is_visible(const Term& t, const CalculusProfile& p, const ExplorationBounds& b = {});
Verdict is_invisible(const Term& t, const CalculusProfile& p, const ExplorationBounds& b = {});

/// Graphviz rendering: states labelled with their pretty-printed terms.
std::string to_dot(const Lts& l);
/// {"states":[...], "edges":[{src,label,dst}], "root", "complete", ...}
std::string to_json(const Lts& l, int indent = 2);

} // namespace procalc
