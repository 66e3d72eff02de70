#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "procalc/term.hpp"

namespace procalc {

enum class Calculus {
  Ccs,
  Pi,
  PiMpm,
  BccspTheta,
  Cpg,
  CcsSg,
  CcsPrio,
  Cows,
};

std::string_view to_string(Calculus c);
std::optional<Calculus> calculus_from_string(std::string_view s);
const std::vector<Calculus>& all_calculi();

/// Irreflexive, transitive order over BCCSP actions. Actions are spelled as
/// in printed labels: `tau`, `a`, `'a`. A pair (lo, hi) means hi preempts lo.
class PriorityOrder {
public:
  PriorityOrder() = default;
  /// Throws SemanticError if the pairs are reflexive or not transitive.
  explicit PriorityOrder(std::set<std::pair<std::string, std::string>> pairs);

  bool less(const std::string& lo, const std::string& hi) const {
    return pairs_.count({lo, hi}) > 0;
  }
  const std::set<std::pair<std::string, std::string>>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }

private:
  std::set<std::pair<std::string, std::string>> pairs_;
};

struct Definition {
  std::vector<Name> params;
  Term body;
};

/// Parameterised process definitions `A<a1,...,an> := body`.
class DefinitionEnv {
public:
  /// Throws SemanticError when the body has free names outside its params
  /// or the params repeat.
  void define(const std::string& name, Definition def);
  const Definition* find(const std::string& name) const;
  const std::map<std::string, Definition>& all() const { return defs_; }
  bool empty() const { return defs_.empty(); }

private:
  std::map<std::string, Definition> defs_;
};

struct CalculusProfile {
  Calculus calculus = Calculus::Ccs;
  PriorityOrder order;   // BccspTheta only
  DefinitionEnv defs;    // CCS-family only

  CalculusProfile() = default;
  explicit CalculusProfile(Calculus c) : calculus(c) {}
};

bool admits_definitions(Calculus c);
bool is_name_passing(Calculus c);  // Pi, PiMpm, Cows

struct Violation {
  std::string path;     // child indices from the root, e.g. "/0/1"
  std::string message;
  const Node* node = nullptr;
};

/// Lists every construct of `t` that `p` does not admit. Holes are always
/// admitted. Definition calls are checked against the profile's environment.
std::vector<Violation> validate_profile(const Term& t, const CalculusProfile& p);

/// Throws ProfileError with the first violation, if any.
void require_profile(const Term& t, const CalculusProfile& p);

} // namespace procalc
