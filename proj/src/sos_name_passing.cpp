// Early-style semantics for pi, pi-MPM and the COWS fragment.
//
// Inputs are kept symbolic below the root: an input capability records the
// pattern, the continuation and how to rebuild the enclosing term. Internal
// communication matches an output payload against the pattern directly; only
// at the root are capabilities instantiated over the finite input universe.

#include <algorithm>
#include <functional>

#include "procalc/error.hpp"
#include "sos_internal.hpp"

namespace procalc::detail {

namespace {

struct InputCap {
  Tuple subject;
  Pattern pattern;
  Term cont;
  std::function<Term(Term)> rebuild;
};

struct Derivation {
  std::vector<Step> steps;  // tau, kill and output steps; extruded = binder names
  std::vector<InputCap> inputs;
  bool truncated = false;
};

bool mentions(const Tuple& t, const Name& n) { return std::find(t.begin(), t.end(), n) != t.end(); }

Term wrap_restrictions(const NameSet& names, Term body) {
  for (auto it = names.rbegin(); it != names.rend(); ++it) body = nu(*it, std::move(body));
  return body;
}

class Engine {
public:
  explicit Engine(const NamePassingConfig& cfg) : cfg_(cfg) {}

  Derivation derive(const Term& t) {
    Derivation d;
    std::visit(
        Overloaded{
            [](const node::Nil&) {},
            [&](const node::Prefix& p) {
              std::visit(
                  Overloaded{
                      [&](const act::Tau&) { d.steps.push_back({label::Tau{}, p.cont}); },
                      [&](const act::PiOut& a) {
                        d.steps.push_back({label::Out{a.subject, a.payload, {}}, p.cont});
                      },
                      [&](const act::PiIn& a) {
                        d.inputs.push_back({a.subject, a.pattern, p.cont, [](Term x) { return x; }});
                      },
                      [&](const act::Ccs&) {
                        throw ProfileError("CCS-style action in a name-passing term");
                      },
                  },
                  p.action);
            },
            [&](const node::Sum& s) {
              for (const auto& b : s.branches) absorb(d, derive(b));
            },
            [&](const node::Par& p) { d = derive_par(p.left, p.right); },
            [&](const node::Nu& n) { d = derive_nu(n); },
            [&](const node::Match& m) {
              if (m.lhs == m.rhs) d = derive(m.cont);
            },
            [&](const node::Bang& b) { d = derive_bang(b); },
            [&](const node::Kill& k) { d.steps.push_back({label::Kill{k.label}, nil()}); },
            [&](const node::Delimit& dl) { d = derive_delimit(dl); },
            [](const node::Hole&) { throw ContextError("context not a process"); },
            [](const auto&) {
              throw ProfileError("construct not admitted by a name-passing calculus");
            },
        },
        t.node().v);
    return d;
  }

private:
  static void absorb(Derivation& into, Derivation&& from) {
    into.steps.insert(into.steps.end(), std::make_move_iterator(from.steps.begin()),
                      std::make_move_iterator(from.steps.end()));
    into.inputs.insert(into.inputs.end(), std::make_move_iterator(from.inputs.begin()),
                       std::make_move_iterator(from.inputs.end()));
    into.truncated = into.truncated || from.truncated;
  }

  /// Communications between an output of `outs` and an input of `ins`.
  /// `assemble(out_target, in_target)` rebuilds the parallel composition.
  static void communicate(const std::vector<Step>& outs, const std::vector<InputCap>& ins,
                          const std::function<Term(Term, Term)>& assemble,
                          std::vector<Step>& into) {
    for (const auto& s : outs) {
      const auto* o = std::get_if<label::Out>(&s.label);
      if (!o) continue;
      for (const auto& in : ins) {
        if (in.subject != o->subject) continue;
        auto sigma = match_pattern(in.pattern, o->payload);
        if (!sigma) continue;
        Term received = in.rebuild(apply_subst(in.cont, *sigma));
        into.push_back({label::Tau{}, wrap_restrictions(o->extruded, assemble(s.target, received))});
      }
    }
  }

  Derivation derive_par(const Term& left, const Term& right) {
    Derivation l = derive(left);
    Derivation r = derive(right);
    Derivation d;
    d.truncated = l.truncated || r.truncated;
    for (const auto& s : l.steps) {
      if (cfg_.cows && std::holds_alternative<label::Kill>(s.label))
        d.steps.push_back({s.label, par(s.target, halt(right))});
      else
        d.steps.push_back({s.label, par(s.target, right)});
    }
    for (const auto& s : r.steps) {
      if (cfg_.cows && std::holds_alternative<label::Kill>(s.label))
        d.steps.push_back({s.label, par(halt(left), s.target)});
      else
        d.steps.push_back({s.label, par(left, s.target)});
    }
    for (const auto& in : l.inputs) {
      auto rebuild = in.rebuild;
      d.inputs.push_back({in.subject, in.pattern, in.cont,
                          [rebuild, right](Term x) { return par(rebuild(std::move(x)), right); }});
    }
    for (const auto& in : r.inputs) {
      auto rebuild = in.rebuild;
      d.inputs.push_back({in.subject, in.pattern, in.cont,
                          [rebuild, left](Term x) { return par(left, rebuild(std::move(x))); }});
    }
    communicate(l.steps, r.inputs, [](Term o, Term i) { return par(std::move(o), std::move(i)); },
                d.steps);
    communicate(r.steps, l.inputs, [](Term o, Term i) { return par(std::move(i), std::move(o)); },
                d.steps);
    return d;
  }

  Derivation derive_nu(const node::Nu& n) {
    Derivation body = derive(n.body);
    Derivation d;
    d.truncated = body.truncated;
    for (auto& s : body.steps) {
      if (auto* o = std::get_if<label::Out>(&s.label)) {
        if (mentions(o->subject, n.name)) continue;
        if (mentions(o->payload, n.name)) {
          o->extruded.insert(n.name);
          d.steps.push_back(std::move(s));
          continue;
        }
      }
      d.steps.push_back({std::move(s.label), nu(n.name, s.target)});
    }
    for (auto& in : body.inputs) {
      if (mentions(in.subject, n.name)) continue;
      auto rebuild = in.rebuild;
      Name bound = n.name;
      in.rebuild = [rebuild, bound](Term x) { return nu(bound, rebuild(std::move(x))); };
      d.inputs.push_back(std::move(in));
    }
    return d;
  }

  Derivation derive_bang(const node::Bang& b) {
    const unsigned limit = cfg_.opts->max_bang_unfold;
    Derivation d;
    if (b.unfolded + 1 > limit) {
      d.truncated = true;
      return d;
    }
    Derivation copy = derive(b.body);
    d.truncated = copy.truncated;
    const Term residual = bang(b.body, b.unfolded + 1);
    for (const auto& s : copy.steps) d.steps.push_back({s.label, par(s.target, residual)});
    for (const auto& in : copy.inputs) {
      auto rebuild = in.rebuild;
      d.inputs.push_back({in.subject, in.pattern, in.cont, [rebuild, residual](Term x) {
                            return par(rebuild(std::move(x)), residual);
                          }});
    }
    // Two replicas talking to each other.
    std::vector<Step> pairs;
    communicate(copy.steps, copy.inputs,
                [](Term o, Term i) { return par(std::move(o), std::move(i)); }, pairs);
    if (!pairs.empty()) {
      if (b.unfolded + 2 > limit) {
        d.truncated = true;
      } else {
        const Term residual2 = bang(b.body, b.unfolded + 2);
        for (auto& s : pairs) d.steps.push_back({std::move(s.label), par(s.target, residual2)});
      }
    }
    return d;
  }

  Derivation derive_delimit(const node::Delimit& dl) {
    Derivation body = derive(dl.body);
    Derivation d;
    d.truncated = body.truncated;
    const bool kills = std::any_of(body.steps.begin(), body.steps.end(), [&](const Step& s) {
      const auto* k = std::get_if<label::Kill>(&s.label);
      return k && k->label == dl.label;
    });
    if (kills) {
      // Eager kill: nothing else inside the scope may move.
      for (const auto& s : body.steps) {
        const auto* k = std::get_if<label::Kill>(&s.label);
        if (k && k->label == dl.label) d.steps.push_back({label::Tau{}, delimit(dl.label, s.target)});
      }
      return d;
    }
    for (auto& s : body.steps) d.steps.push_back({std::move(s.label), delimit(dl.label, s.target)});
    for (auto& in : body.inputs) {
      auto rebuild = in.rebuild;
      KillerLabel k = dl.label;
      in.rebuild = [rebuild, k](Term x) { return delimit(k, rebuild(std::move(x))); };
      d.inputs.push_back(std::move(in));
    }
    return d;
  }

  const NamePassingConfig& cfg_;
};

/// Least `v#i` names outside `avoid`.
std::vector<Name> fresh_names(std::size_t count, NameSet avoid) {
  std::vector<Name> out;
  for (std::size_t i = 0; i < count; ++i) {
    Name n = fresh_name("v", avoid);
    avoid.insert(n);
    out.push_back(n);
  }
  return out;
}

void instantiate_inputs(const InputCap& in, const NameSet& known, std::vector<Step>& into) {
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < in.pattern.size(); ++i)
    if (!in.pattern[i].is_protected) slots.push_back(i);

  std::vector<Name> universe(known.begin(), known.end());
  for (auto& n : fresh_names(slots.size(), known)) universe.push_back(n);

  Tuple tuple(in.pattern.size());
  for (std::size_t i = 0; i < in.pattern.size(); ++i)
    if (in.pattern[i].is_protected) tuple[i] = in.pattern[i].name;

  std::vector<std::size_t> choice(slots.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < slots.size(); ++k) tuple[slots[k]] = universe[choice[k]];
    if (auto sigma = match_pattern(in.pattern, tuple))
      into.push_back({label::In{in.subject, tuple}, in.rebuild(apply_subst(in.cont, *sigma))});
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == universe.size()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
}

} // namespace

StepSet name_passing_steps(const Term& t, const NamePassingConfig& cfg) {
  Engine e(cfg);
  Derivation d = e.derive(t);

  NameSet known = free_names(t);
  known.insert(cfg.opts->known_names.begin(), cfg.opts->known_names.end());

  std::vector<Step> out;
  for (auto& s : d.steps) {
    auto* o = std::get_if<label::Out>(&s.label);
    if (!o || o->extruded.empty()) {
      out.push_back(std::move(s));
      continue;
    }
    // Bound output: give the opened binders names the environment has not
    // seen, in payload order.
    Substitution opened;
    NameSet avoid = known;
    for (const auto& n : o->payload) {
      if (!o->extruded.count(n) || opened.map.count(n)) continue;
      Name fresh = fresh_name("v", avoid);
      avoid.insert(fresh);
      opened.map[n] = fresh;
    }
    label::Out renamed{o->subject, {}, {}};
    for (const auto& n : o->payload) renamed.payload.push_back(opened(n));
    for (const auto& n : o->extruded) renamed.extruded.insert(opened(n));
    out.push_back({std::move(renamed), apply_subst(s.target, opened)});
  }
  for (const auto& in : d.inputs) instantiate_inputs(in, known, out);
  return StepSet{std::move(out), d.truncated};
}

} // namespace procalc::detail

namespace procalc {

Term halt(const Term& t) {
  if (const auto* d = t.as<node::Delimit>()) return delimit(d->label, halt(d->body));
  if (const auto* p = t.as<node::Par>()) {
    Term l = halt(p->left);
    Term r = halt(p->right);
    if (l.is<node::Nil>() && r.is<node::Nil>()) return nil();
    return par(std::move(l), std::move(r));
  }
  return nil();
}

} // namespace procalc
