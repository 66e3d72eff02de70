#pragma once

#include <map>
#include <set>
#include <vector>

#include "procalc/term.hpp"

namespace procalc {

/// Finite name-to-name map; identity outside its domain.
struct Substitution {
  std::map<Name, Name> map;

  Name operator()(const Name& n) const {
    auto it = map.find(n);
    return it == map.end() ? n : it->second;
  }
  bool empty() const { return map.empty(); }
  bool operator==(const Substitution&) const = default;
};

/// Hole indices occurring in `t`.
std::set<unsigned> holes(const Term& t);
inline bool is_process(const Term& t) { return holes(t).empty(); }

/// Free names. Throws ContextError when `t` still has holes.
NameSet free_names(const Term& t);
/// Free names of a context, treating holes as 0.
NameSet free_names_erasing_holes(const Term& t);

bool is_closed(const Term& t);
/// Name independence: disjoint free-name sets.
bool independent(const Term& p, const Term& q);

/// Capture-avoiding substitution of free occurrences.
Term apply_subst(const Term& t, const Substitution& s);

/// Literal hole replacement. Binders around a hole may capture names of the
/// filler; that is the defining behaviour of contexts.
Term plug(const Term& context, const std::vector<Term>& fillers);

/// Renames every name bound by restriction `(new n)` or by an input pattern
/// to the canonical binder names `#0, #1, ...` in pre-order traversal order,
/// skipping indices already used by free names. Static CCS restrictions and
/// killer-label delimitations keep their labels.
Term alpha_canonical(const Term& t);
bool alpha_equivalent(const Term& a, const Term& b);

/// Least name `base.text#i` not in `avoid`.
Name fresh_name(const std::string& base, const NameSet& avoid);

/// Ordinary definition-call unfolding: body with params replaced by args.
Term instantiate(const Term& body, const std::vector<Name>& params,
                 const std::vector<Name>& args);

} // namespace procalc
