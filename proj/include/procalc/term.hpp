#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace procalc {

/// A channel name. Parser-produced names carry only text; machine-generated
/// names carry a fresh index as well, so they can never collide with source
/// names. Canonical binder names have empty text.
struct Name {
  std::string text;
  std::optional<std::uint32_t> fresh;

  Name() = default;
  explicit Name(std::string t) : text(std::move(t)) {}
  Name(std::string t, std::uint32_t index) : text(std::move(t)), fresh(index) {}

  bool is_fresh() const { return fresh.has_value(); }
  auto operator<=>(const Name&) const = default;
  bool operator==(const Name&) const = default;
};

using NameSet = std::set<Name>;

std::string to_string(const Name& n);

/// COWS killer label. Lives in its own namespace: never equal to a Name.
struct KillerLabel {
  std::string text;
  auto operator<=>(const KillerLabel&) const = default;
  bool operator==(const KillerLabel&) const = default;
};

enum class Level : std::uint8_t { Ordinary = 0, Prioritized = 1 };
enum class Polarity : std::uint8_t { In = 0, Out = 1 };

inline Polarity opposite(Polarity p) {
  return p == Polarity::In ? Polarity::Out : Polarity::In;
}

using Tuple = std::vector<Name>;

struct PatternItem {
  Name name;
  bool is_protected = false;
  auto operator<=>(const PatternItem&) const = default;
  bool operator==(const PatternItem&) const = default;
};

using Pattern = std::vector<PatternItem>;
using GuardSet = std::set<Name>;

/// A CCS-family restriction entry: the name together with its priority level.
struct LevelledName {
  Name name;
  Level level = Level::Ordinary;
  auto operator<=>(const LevelledName&) const = default;
  bool operator==(const LevelledName&) const = default;
};

namespace act {
struct Tau {
  GuardSet guard;
  auto operator<=>(const Tau&) const = default;
  bool operator==(const Tau&) const = default;
};
struct Ccs {
  Name name;
  Polarity polarity = Polarity::In;
  Level level = Level::Ordinary;
  GuardSet guard;
  auto operator<=>(const Ccs&) const = default;
  bool operator==(const Ccs&) const = default;
};
struct PiOut {
  Tuple subject;
  Tuple payload;
  auto operator<=>(const PiOut&) const = default;
  bool operator==(const PiOut&) const = default;
};
struct PiIn {
  Tuple subject;
  Pattern pattern;
  auto operator<=>(const PiIn&) const = default;
  bool operator==(const PiIn&) const = default;
};
} // namespace act

using PrefixAction = std::variant<act::Tau, act::Ccs, act::PiOut, act::PiIn>;

struct Node;

/// Immutable, cheaply copyable process term (or context, when it contains
/// holes). Structure is shared between copies.
class Term {
public:
  Term();  // Nil
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  const Node& node() const { return *node_; }
  const Node* get() const { return node_.get(); }

  template <class T> const T* as() const;
  template <class T> bool is() const { return as<T>() != nullptr; }

private:
  std::shared_ptr<const Node> node_;
};

/// Structural equality (names compared exactly, no alpha-conversion).
bool operator==(const Term& a, const Term& b);
/// Total structural order, used for deterministic step sets.
std::strong_ordering operator<=>(const Term& a, const Term& b);

namespace node {
struct Nil {};
struct Prefix {
  PrefixAction action;
  Term cont;
};
struct Sum {
  std::vector<Term> branches;
};
struct Par {
  Term left, right;
};
struct Nu {
  Name name;
  Term body;
};
struct RestrictSet {
  std::set<LevelledName> labels;
  Term body;
};
/// `unfolded` counts the replicas already spawned; it is part of the state
/// identity but is not printed.
struct Bang {
  Term body;
  unsigned unfolded = 0;
};
struct Match {
  Name lhs, rhs;
  Term cont;
};
struct Relabel {
  Term body;
  std::map<Name, Name> map;
};
struct DefCall {
  std::string name;
  std::vector<Name> args;
};
struct Theta {
  Term body;
};
struct Prioritize {
  Term body;
  Name action;
};
struct Deprioritize {
  Term body;
  Name action;
};
struct Kill {
  KillerLabel label;
};
struct Delimit {
  KillerLabel label;
  Term body;
};
struct Hole {
  unsigned index = 1;
};
} // namespace node

struct Node {
  std::variant<node::Nil, node::Prefix, node::Sum, node::Par, node::Nu,
               node::RestrictSet, node::Bang, node::Match, node::Relabel,
               node::DefCall, node::Theta, node::Prioritize, node::Deprioritize,
               node::Kill, node::Delimit, node::Hole>
      v;
};

template <class T> const T* Term::as() const { return std::get_if<T>(&node_->v); }

// Constructors.
Term nil();
Term prefix(PrefixAction action, Term cont);
Term tau(Term cont);
Term action(const Name& name, Polarity polarity, Term cont,
         Level level = Level::Ordinary, GuardSet guard = {});
Term pi_out(Tuple subject, Tuple payload, Term cont = nil());
Term pi_in(Tuple subject, Pattern pattern, Term cont);
Term sum(std::vector<Term> branches);  // requires >= 2 branches
Term choice(Term a, Term b);           // binary sum, flattening nothing
Term par(Term left, Term right);
Term nu(const Name& name, Term body);
Term restrict(std::set<LevelledName> labels, Term body);
Term bang(Term body, unsigned unfolded = 0);
Term match(const Name& lhs, const Name& rhs, Term cont);
Term relabel(Term body, std::map<Name, Name> map);
Term call(std::string name, std::vector<Name> args);
Term theta(Term body);
Term prioritize(Term body, const Name& action);
Term deprioritize(Term body, const Name& action);
Term kill(KillerLabel label);
Term delimit(KillerLabel label, Term body);
Term hole(unsigned index = 1);

/// Convenience: `names({"a","b"})` builds a tuple of parser-style names.
Tuple names(std::initializer_list<const char*> texts);
Pattern placeholders(std::initializer_list<const char*> texts);

} // namespace procalc
