#include "procalc/term_ops.hpp"

#include <algorithm>

#include "procalc/error.hpp"

namespace procalc {

namespace {

template <class... Ts> struct Overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

// Free-occurrence bookkeeping. CCS-family names live at two priority
// levels; a restriction entry binds only its own level. Each free name maps
// to the set of levels at which it occurs free.
constexpr unsigned kLevel0 = 1u;
constexpr unsigned kLevel1 = 2u;
constexpr unsigned kBothLevels = kLevel0 | kLevel1;

using Occurrences = std::map<Name, unsigned>;

unsigned level_bit(Level l) { return l == Level::Ordinary ? kLevel0 : kLevel1; }

void merge(Occurrences& into, const Occurrences& from) {
  for (const auto& [n, m] : from) into[n] |= m;
}

void add_all(Occurrences& o, const Tuple& names, unsigned mask) {
  for (const auto& n : names) o[n] |= mask;
}

void add_guard(Occurrences& o, const GuardSet& guard) {
  for (const auto& n : guard) o[n] |= kLevel0;
}

Occurrences occurrences(const Term& t, bool erase_holes) {
  Occurrences out;
  std::visit(
      Overloaded{
          [](const node::Nil&) {},
          [&](const node::Prefix& p) {
            out = occurrences(p.cont, erase_holes);
            std::visit(Overloaded{
                           [&](const act::Tau& a) { add_guard(out, a.guard); },
                           [&](const act::Ccs& a) {
                             out[a.name] |= level_bit(a.level);
                             add_guard(out, a.guard);
                           },
                           [&](const act::PiOut& a) {
                             add_all(out, a.subject, kLevel0);
                             add_all(out, a.payload, kLevel0);
                           },
                           [&](const act::PiIn& a) {
                             for (const auto& item : a.pattern)
                               if (!item.is_protected) out.erase(item.name);
                             add_all(out, a.subject, kLevel0);
                             for (const auto& item : a.pattern)
                               if (item.is_protected) out[item.name] |= kLevel0;
                           },
                       },
                       p.action);
          },
          [&](const node::Sum& s) {
            for (const auto& b : s.branches) merge(out, occurrences(b, erase_holes));
          },
          [&](const node::Par& p) {
            out = occurrences(p.left, erase_holes);
            merge(out, occurrences(p.right, erase_holes));
          },
          [&](const node::Nu& n) {
            out = occurrences(n.body, erase_holes);
            out.erase(n.name);
          },
          [&](const node::RestrictSet& r) {
            out = occurrences(r.body, erase_holes);
            for (const auto& l : r.labels) {
              auto it = out.find(l.name);
              if (it == out.end()) continue;
              it->second &= ~level_bit(l.level);
              if (it->second == 0) out.erase(it);
            }
          },
          [&](const node::Bang& b) { out = occurrences(b.body, erase_holes); },
          [&](const node::Match& m) {
            out = occurrences(m.cont, erase_holes);
            out[m.lhs] |= kLevel0;
            out[m.rhs] |= kLevel0;
          },
          [&](const node::Relabel& r) {
            for (const auto& [n, mask] : occurrences(r.body, erase_holes)) {
              auto it = r.map.find(n);
              out[it == r.map.end() ? n : it->second] |= mask;
            }
          },
          [&](const node::DefCall& c) { add_all(out, c.args, kBothLevels); },
          [&](const node::Theta& th) { out = occurrences(th.body, erase_holes); },
          [&](const node::Prioritize& p) {
            out = occurrences(p.body, erase_holes);
            auto it = out.find(p.action);
            if (it != out.end() && (it->second & kLevel0))
              it->second = (it->second & ~kLevel0) | kLevel1;
          },
          [&](const node::Deprioritize& p) {
            out = occurrences(p.body, erase_holes);
            auto it = out.find(p.action);
            if (it != out.end() && (it->second & kLevel1))
              it->second = (it->second & ~kLevel1) | kLevel0;
          },
          [](const node::Kill&) {},
          [&](const node::Delimit& d) { out = occurrences(d.body, erase_holes); },
          [&](const node::Hole&) {
            if (!erase_holes) throw ContextError("context not a process");
          },
      },
      t.node().v);
  return out;
}

NameSet project(const Occurrences& o) {
  NameSet out;
  for (const auto& [n, mask] : o) out.insert(out.end(), n);
  return out;
}

void collect_holes(const Term& t, std::set<unsigned>& out) {
  std::visit(Overloaded{
                 [&](const node::Hole& h) { out.insert(h.index); },
                 [&](const node::Prefix& p) { collect_holes(p.cont, out); },
                 [&](const node::Sum& s) {
                   for (const auto& b : s.branches) collect_holes(b, out);
                 },
                 [&](const node::Par& p) {
                   collect_holes(p.left, out);
                   collect_holes(p.right, out);
                 },
                 [&](const node::Nu& n) { collect_holes(n.body, out); },
                 [&](const node::RestrictSet& r) { collect_holes(r.body, out); },
                 [&](const node::Bang& b) { collect_holes(b.body, out); },
                 [&](const node::Match& m) { collect_holes(m.cont, out); },
                 [&](const node::Relabel& r) { collect_holes(r.body, out); },
                 [&](const node::Theta& th) { collect_holes(th.body, out); },
                 [&](const node::Prioritize& p) { collect_holes(p.body, out); },
                 [&](const node::Deprioritize& p) { collect_holes(p.body, out); },
                 [&](const node::Delimit& d) { collect_holes(d.body, out); },
                 [](const auto&) {},
             },
             t.node().v);
}

Tuple map_tuple(const Tuple& t, const Substitution& s) {
  Tuple out;
  out.reserve(t.size());
  for (const auto& n : t) out.push_back(s(n));
  return out;
}

GuardSet map_guard(const GuardSet& g, const Substitution& s) {
  GuardSet out;
  for (const auto& n : g) out.insert(s(n));
  return out;
}

// Renames occurrences of `from` that a restriction entry (from, level) binds.
Term rename_level(const Term& t, const Name& from, Level level, const Name& to);

Term subst(const Term& t, const Substitution& s);

// Pushes `s` under binders `bound` of `body`, alpha-renaming any binder that
// would capture a name in the image of `s`. Returns the renamed binders.
std::vector<Name> push_under_binders(std::vector<Name> bound, Term& body, const Substitution& s) {
  Substitution inner = s;
  for (const auto& b : bound) inner.map.erase(b);
  if (inner.empty()) return bound;

  const NameSet body_fn = free_names_erasing_holes(body);
  NameSet needed;
  for (const auto& [from, to] : inner.map)
    if (body_fn.count(from)) needed.insert(to);

  NameSet avoid = body_fn;
  avoid.insert(needed.begin(), needed.end());
  for (const auto& [from, to] : inner.map) avoid.insert(from);
  for (const auto& b : bound) avoid.insert(b);

  Substitution renaming;
  for (auto& b : bound) {
    if (!needed.count(b)) continue;
    Name fresh = fresh_name(b.text, avoid);
    avoid.insert(fresh);
    renaming.map[b] = fresh;
    b = fresh;
  }
  if (!renaming.empty()) body = subst(body, renaming);
  body = subst(body, inner);
  return bound;
}

Term subst(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  return std::visit(
      Overloaded{
          [&](const node::Nil&) { return t; },
          [&](const node::Hole&) { return t; },
          [&](const node::Kill&) { return t; },
          [&](const node::Prefix& p) -> Term {
            return std::visit(
                Overloaded{
                    [&](const act::Tau& a) {
                      return prefix(act::Tau{map_guard(a.guard, s)}, subst(p.cont, s));
                    },
                    [&](const act::Ccs& a) {
                      return prefix(act::Ccs{s(a.name), a.polarity, a.level, map_guard(a.guard, s)},
                                    subst(p.cont, s));
                    },
                    [&](const act::PiOut& a) {
                      return prefix(act::PiOut{map_tuple(a.subject, s), map_tuple(a.payload, s)},
                                    subst(p.cont, s));
                    },
                    [&](const act::PiIn& a) {
                      std::vector<Name> bound;
                      for (const auto& item : a.pattern)
                        if (!item.is_protected) bound.push_back(item.name);
                      Term cont = p.cont;
                      auto renamed = push_under_binders(bound, cont, s);
                      Pattern pattern;
                      std::size_t next = 0;
                      for (const auto& item : a.pattern) {
                        if (item.is_protected)
                          pattern.push_back(PatternItem{s(item.name), true});
                        else
                          pattern.push_back(PatternItem{renamed[next++], false});
                      }
                      return prefix(act::PiIn{map_tuple(a.subject, s), std::move(pattern)}, cont);
                    },
                },
                p.action);
          },
          [&](const node::Sum& x) {
            std::vector<Term> branches;
            for (const auto& b : x.branches) branches.push_back(subst(b, s));
            return sum(std::move(branches));
          },
          [&](const node::Par& x) { return par(subst(x.left, s), subst(x.right, s)); },
          [&](const node::Nu& x) {
            Term body = x.body;
            auto renamed = push_under_binders({x.name}, body, s);
            return nu(renamed.front(), body);
          },
          [&](const node::RestrictSet& x) {
            NameSet touched;
            for (const auto& [from, to] : s.map) {
              touched.insert(from);
              touched.insert(to);
            }
            Term body = x.body;
            std::set<LevelledName> labels;
            NameSet avoid = free_names_erasing_holes(body);
            avoid.insert(touched.begin(), touched.end());
            for (const auto& l : x.labels) avoid.insert(l.name);
            for (const auto& l : x.labels) {
              if (!touched.count(l.name)) {
                labels.insert(l);
                continue;
              }
              Name fresh = fresh_name(l.name.text, avoid);
              avoid.insert(fresh);
              body = rename_level(body, l.name, l.level, fresh);
              labels.insert(LevelledName{fresh, l.level});
            }
            return restrict(std::move(labels), subst(body, s));
          },
          [&](const node::Bang& x) { return bang(subst(x.body, s), x.unfolded); },
          [&](const node::Match& x) { return match(s(x.lhs), s(x.rhs), subst(x.cont, s)); },
          [&](const node::Relabel& x) {
            // (P[f])s = P[s . f]: the relabelling absorbs the substitution.
            std::map<Name, Name> composed;
            for (const auto& [from, to] : x.map) composed[from] = s(to);
            for (const auto& [from, to] : s.map)
              if (!x.map.count(from)) composed[from] = to;
            std::erase_if(composed, [](const auto& kv) { return kv.first == kv.second; });
            if (composed.empty()) return x.body;
            return relabel(x.body, std::move(composed));
          },
          [&](const node::DefCall& x) { return call(x.name, map_tuple(x.args, s)); },
          [&](const node::Theta& x) { return theta(subst(x.body, s)); },
          [&](const node::Prioritize& x) { return prioritize(subst(x.body, s), s(x.action)); },
          [&](const node::Deprioritize& x) {
            return deprioritize(subst(x.body, s), s(x.action));
          },
          [&](const node::Delimit& x) { return delimit(x.label, subst(x.body, s)); },
      },
      t.node().v);
}

Term rename_level(const Term& t, const Name& from, Level level, const Name& to) {
  const bool plain = level == Level::Ordinary;
  auto rn = [&](const Name& n) { return n == from ? to : n; };
  auto rn_plain = [&](const Name& n) { return plain && n == from ? to : n; };
  auto rn_guard = [&](const GuardSet& g) {
    GuardSet out;
    for (const auto& n : g) out.insert(rn_plain(n));
    return out;
  };
  auto rn_tuple = [&](const Tuple& tu) {
    Tuple out;
    for (const auto& n : tu) out.push_back(rn_plain(n));
    return out;
  };
  auto rec = [&](const Term& x) { return rename_level(x, from, level, to); };
  return std::visit(
      Overloaded{
          [&](const node::Nil&) { return t; },
          [&](const node::Hole&) { return t; },
          [&](const node::Kill&) { return t; },
          [&](const node::Prefix& p) -> Term {
            return std::visit(
                Overloaded{
                    [&](const act::Tau& a) { return prefix(act::Tau{rn_guard(a.guard)}, rec(p.cont)); },
                    [&](const act::Ccs& a) {
                      Name n = a.level == level ? rn(a.name) : a.name;
                      return prefix(act::Ccs{n, a.polarity, a.level, rn_guard(a.guard)}, rec(p.cont));
                    },
                    [&](const act::PiOut& a) {
                      return prefix(act::PiOut{rn_tuple(a.subject), rn_tuple(a.payload)}, rec(p.cont));
                    },
                    [&](const act::PiIn& a) {
                      for (const auto& item : a.pattern)
                        if (!item.is_protected && item.name == from)
                          return prefix(act::PiIn{rn_tuple(a.subject), a.pattern}, p.cont);
                      Pattern pattern = a.pattern;
                      for (auto& item : pattern)
                        if (item.is_protected) item.name = rn_plain(item.name);
                      return prefix(act::PiIn{rn_tuple(a.subject), std::move(pattern)}, rec(p.cont));
                    },
                },
                p.action);
          },
          [&](const node::Sum& x) {
            std::vector<Term> branches;
            for (const auto& b : x.branches) branches.push_back(rec(b));
            return sum(std::move(branches));
          },
          [&](const node::Par& x) { return par(rec(x.left), rec(x.right)); },
          [&](const node::Nu& x) { return x.name == from ? t : nu(x.name, rec(x.body)); },
          [&](const node::RestrictSet& x) {
            if (x.labels.count(LevelledName{from, level})) return t;
            return restrict(x.labels, rec(x.body));
          },
          [&](const node::Bang& x) { return bang(rec(x.body), x.unfolded); },
          [&](const node::Match& x) { return match(rn_plain(x.lhs), rn_plain(x.rhs), rec(x.cont)); },
          [&](const node::Relabel& x) {
            std::map<Name, Name> m;
            for (const auto& [k, v] : x.map) m[k] = rn(v);
            if (!x.map.count(from)) m[from] = to;
            return relabel(x.body, std::move(m));
          },
          [&](const node::DefCall& x) {
            Tuple args;
            for (const auto& n : x.args) args.push_back(rn(n));
            return call(x.name, std::move(args));
          },
          [&](const node::Theta& x) { return theta(rec(x.body)); },
          [&](const node::Prioritize& x) { return prioritize(rec(x.body), rn(x.action)); },
          [&](const node::Deprioritize& x) { return deprioritize(rec(x.body), rn(x.action)); },
          [&](const node::Delimit& x) { return delimit(x.label, rec(x.body)); },
      },
      t.node().v);
}

Term plug_rec(const Term& t, const std::vector<Term>& fillers) {
  return std::visit(
      Overloaded{
          [&](const node::Hole& h) { return fillers.at(h.index - 1); },
          [&](const node::Nil&) { return t; },
          [&](const node::Kill&) { return t; },
          [&](const node::DefCall&) { return t; },
          [&](const node::Prefix& p) { return prefix(p.action, plug_rec(p.cont, fillers)); },
          [&](const node::Sum& x) {
            std::vector<Term> branches;
            for (const auto& b : x.branches) branches.push_back(plug_rec(b, fillers));
            return sum(std::move(branches));
          },
          [&](const node::Par& x) {
            return par(plug_rec(x.left, fillers), plug_rec(x.right, fillers));
          },
          [&](const node::Nu& x) { return nu(x.name, plug_rec(x.body, fillers)); },
          [&](const node::RestrictSet& x) { return restrict(x.labels, plug_rec(x.body, fillers)); },
          [&](const node::Bang& x) { return bang(plug_rec(x.body, fillers), x.unfolded); },
          [&](const node::Match& x) { return match(x.lhs, x.rhs, plug_rec(x.cont, fillers)); },
          [&](const node::Relabel& x) { return relabel(plug_rec(x.body, fillers), x.map); },
          [&](const node::Theta& x) { return theta(plug_rec(x.body, fillers)); },
          [&](const node::Prioritize& x) { return prioritize(plug_rec(x.body, fillers), x.action); },
          [&](const node::Deprioritize& x) {
            return deprioritize(plug_rec(x.body, fillers), x.action);
          },
          [&](const node::Delimit& x) { return delimit(x.label, plug_rec(x.body, fillers)); },
      },
      t.node().v);
}

class Canonicalizer {
public:
  explicit Canonicalizer(const NameSet& free) {
    for (const auto& n : free)
      if (n.text.empty() && n.fresh) taken_.insert(*n.fresh);
  }

  Term run(const Term& t, const std::map<Name, Name>& env) {
    auto look = [&](const Name& n) {
      auto it = env.find(n);
      return it == env.end() ? n : it->second;
    };
    auto look_tuple = [&](const Tuple& tu) {
      Tuple out;
      for (const auto& n : tu) out.push_back(look(n));
      return out;
    };
    auto look_guard = [&](const GuardSet& g) {
      GuardSet out;
      for (const auto& n : g) out.insert(look(n));
      return out;
    };
    return std::visit(
        Overloaded{
            [&](const node::Nil&) { return t; },
            [&](const node::Hole&) { return t; },
            [&](const node::Kill&) { return t; },
            [&](const node::Prefix& p) -> Term {
              return std::visit(
                  Overloaded{
                      [&](const act::Tau& a) {
                        return prefix(act::Tau{look_guard(a.guard)}, run(p.cont, env));
                      },
                      [&](const act::Ccs& a) {
                        return prefix(act::Ccs{look(a.name), a.polarity, a.level, look_guard(a.guard)},
                                      run(p.cont, env));
                      },
                      [&](const act::PiOut& a) {
                        return prefix(act::PiOut{look_tuple(a.subject), look_tuple(a.payload)},
                                      run(p.cont, env));
                      },
                      [&](const act::PiIn& a) {
                        auto inner = env;
                        Pattern pattern;
                        for (const auto& item : a.pattern) {
                          if (item.is_protected) {
                            pattern.push_back(PatternItem{look(item.name), true});
                          } else {
                            Name c = next();
                            inner[item.name] = c;
                            pattern.push_back(PatternItem{c, false});
                          }
                        }
                        return prefix(act::PiIn{look_tuple(a.subject), std::move(pattern)},
                                      run(p.cont, inner));
                      },
                  },
                  p.action);
            },
            [&](const node::Sum& x) {
              std::vector<Term> branches;
              for (const auto& b : x.branches) branches.push_back(run(b, env));
              return sum(std::move(branches));
            },
            [&](const node::Par& x) {
              Term l = run(x.left, env);
              return par(l, run(x.right, env));
            },
            [&](const node::Nu& x) {
              auto inner = env;
              Name c = next();
              inner[x.name] = c;
              return nu(c, run(x.body, inner));
            },
            [&](const node::RestrictSet& x) {
              // CCS restriction is static; its labels are not renamed, but
              // they shadow any outer binder of the same name.
              auto inner = env;
              for (const auto& l : x.labels) inner.erase(l.name);
              return restrict(x.labels, run(x.body, inner));
            },
            [&](const node::Bang& x) { return bang(run(x.body, env), x.unfolded); },
            [&](const node::Match& x) { return match(look(x.lhs), look(x.rhs), run(x.cont, env)); },
            [&](const node::Relabel& x) {
              std::map<Name, Name> m;
              for (const auto& [k, v] : x.map) m[k] = look(v);
              return relabel(run(x.body, {}), std::move(m));
            },
            [&](const node::DefCall& x) { return call(x.name, look_tuple(x.args)); },
            [&](const node::Theta& x) { return theta(run(x.body, env)); },
            [&](const node::Prioritize& x) { return prioritize(run(x.body, env), look(x.action)); },
            [&](const node::Deprioritize& x) {
              return deprioritize(run(x.body, env), look(x.action));
            },
            [&](const node::Delimit& x) { return delimit(x.label, run(x.body, env)); },
        },
        t.node().v);
  }

private:
  Name next() {
    while (taken_.count(counter_)) ++counter_;
    return Name("", counter_++);
  }

  std::set<std::uint32_t> taken_;
  std::uint32_t counter_ = 0;
};

} // namespace

std::set<unsigned> holes(const Term& t) {
  std::set<unsigned> out;
  collect_holes(t, out);
  return out;
}

NameSet free_names(const Term& t) { return project(occurrences(t, false)); }

NameSet free_names_erasing_holes(const Term& t) { return project(occurrences(t, true)); }

bool is_closed(const Term& t) { return free_names(t).empty(); }

bool independent(const Term& p, const Term& q) {
  const NameSet a = free_names(p);
  const NameSet b = free_names(q);
  return std::none_of(a.begin(), a.end(), [&](const Name& n) { return b.count(n) > 0; });
}

Term apply_subst(const Term& t, const Substitution& s) {
  const NameSet fn = free_names_erasing_holes(t);
  Substitution effective;
  for (const auto& [from, to] : s.map)
    if (from != to && fn.count(from)) effective.map.emplace(from, to);
  return subst(t, effective);
}

Term plug(const Term& context, const std::vector<Term>& fillers) {
  const auto hs = holes(context);
  if (hs.empty()) throw ContextError("plug: term has no holes");
  if (*hs.rbegin() != fillers.size() || hs.size() != fillers.size())
    throw ContextError("plug: context has " + std::to_string(hs.size()) + " hole(s) but " +
                       std::to_string(fillers.size()) + " filler(s) were given");
  for (const auto& f : fillers)
    if (!is_process(f)) throw ContextError("plug: fillers must not contain holes");
  return plug_rec(context, fillers);
}

Term alpha_canonical(const Term& t) {
  Canonicalizer c(free_names_erasing_holes(t));
  return c.run(t, {});
}

bool alpha_equivalent(const Term& a, const Term& b) {
  return alpha_canonical(a) == alpha_canonical(b);
}

Name fresh_name(const std::string& base, const NameSet& avoid) {
  for (std::uint32_t i = 0;; ++i) {
    Name candidate(base, i);
    if (!avoid.count(candidate)) return candidate;
  }
}

Term instantiate(const Term& body, const std::vector<Name>& params,
                 const std::vector<Name>& args) {
  if (params.size() != args.size())
    throw SemanticError("arity mismatch: expected " + std::to_string(params.size()) +
                        " argument(s), got " + std::to_string(args.size()));
  Substitution s;
  for (std::size_t i = 0; i < params.size(); ++i) s.map[params[i]] = args[i];
  return apply_subst(body, s);
}

} // namespace procalc
