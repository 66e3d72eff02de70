// CCS, CCS^sg, CCS^prio, CPG and BCCSP_Theta transition rules.

#include <algorithm>

#include "procalc/error.hpp"
#include "sos_internal.hpp"

namespace procalc::detail {

namespace {

bool has_levels(Calculus c) { return c == Calculus::CcsSg || c == Calculus::CcsPrio; }

Level step_level(const Label& l) {
  if (const auto* t = std::get_if<label::Tau>(&l)) return t->level;
  if (const auto* a = std::get_if<label::Act>(&l)) return a->level;
  return Level::Ordinary;
}

const GuardSet* guard_of(const Label& l) {
  if (const auto* t = std::get_if<label::Tau>(&l)) return &t->guard;
  if (const auto* a = std::get_if<label::Act>(&l)) return &a->guard;
  return nullptr;
}

/// Global preemption, applied per node: a derivable prioritized tau removes
/// every ordinary step of the same node.
void preempt(std::vector<Step>& steps) {
  const bool urgent = std::any_of(steps.begin(), steps.end(), [](const Step& s) {
    const auto* t = std::get_if<label::Tau>(&s.label);
    return t && t->level == Level::Prioritized;
  });
  if (!urgent) return;
  std::erase_if(steps, [](const Step& s) { return step_level(s.label) == Level::Ordinary; });
}

bool blocked_by(const GuardSet& guard, const std::set<Offer>& sibling_offers) {
  return std::any_of(guard.begin(), guard.end(), [&](const Name& g) {
    return sibling_offers.count(Offer{g, Polarity::Out}) > 0;
  });
}

class Engine {
public:
  explicit Engine(const CcsFamilyConfig& cfg) : cfg_(cfg) {}

  std::vector<Step> steps(const Term& t, int unfold_depth) {
    std::vector<Step> out;
    std::visit(
        Overloaded{
            [](const node::Nil&) {},
            [&](const node::Prefix& p) {
              std::visit(Overloaded{
                             [&](const act::Tau& a) {
                               out.push_back({label::Tau{Level::Ordinary, a.guard}, p.cont});
                             },
                             [&](const act::Ccs& a) {
                               out.push_back(
                                   {label::Act{a.name, a.polarity, a.level, a.guard}, p.cont});
                             },
                             [&](const auto&) {
                               throw ProfileError("name-passing prefix in a CCS-family term");
                             },
                         },
                         p.action);
            },
            [&](const node::Sum& s) {
              for (const auto& b : s.branches) {
                auto bs = steps(b, unfold_depth);
                out.insert(out.end(), bs.begin(), bs.end());
              }
              prune(out);
            },
            [&](const node::Par& p) {
              out = cfg_.calculus == Calculus::Cpg ? cpg_par(p, unfold_depth)
                                                   : plain_par(p, unfold_depth);
              prune(out);
            },
            [&](const node::RestrictSet& r) {
              for (auto& s : steps(r.body, unfold_depth)) {
                if (const auto* a = std::get_if<label::Act>(&s.label))
                  if (r.labels.count(LevelledName{a->name, a->level})) continue;
                out.push_back({std::move(s.label), restrict(r.labels, s.target)});
              }
            },
            [&](const node::Relabel& r) {
              auto f = [&](const Name& n) {
                auto it = r.map.find(n);
                return it == r.map.end() ? n : it->second;
              };
              auto fg = [&](const GuardSet& g) {
                GuardSet o;
                for (const auto& n : g) o.insert(f(n));
                return o;
              };
              for (auto& s : steps(r.body, unfold_depth)) {
                if (auto* a = std::get_if<label::Act>(&s.label)) {
                  a->name = f(a->name);
                  a->guard = fg(a->guard);
                } else if (auto* tl = std::get_if<label::Tau>(&s.label)) {
                  tl->guard = fg(tl->guard);
                }
                out.push_back({std::move(s.label), relabel(s.target, r.map)});
              }
            },
            [&](const node::DefCall& c) { out = steps(unfold(c, unfold_depth), unfold_depth + 1); },
            [&](const node::Theta& th) {
              if (!cfg_.order) throw SemanticError("theta needs a priority order");
              auto inner = steps(th.body, unfold_depth);
              for (const auto& s : inner) {
                const std::string mine = order_key(s.label);
                const bool preempted = std::any_of(inner.begin(), inner.end(), [&](const Step& o) {
                  return cfg_.order->less(mine, order_key(o.label));
                });
                if (!preempted) out.push_back({s.label, theta(s.target)});
              }
            },
            [&](const node::Prioritize& p) {
              for (auto& s : steps(p.body, unfold_depth)) {
                if (auto* a = std::get_if<label::Act>(&s.label))
                  if (a->name == p.action && a->level == Level::Ordinary)
                    a->level = Level::Prioritized;
                out.push_back({std::move(s.label), prioritize(s.target, p.action)});
              }
            },
            [&](const node::Deprioritize& p) {
              for (auto& s : steps(p.body, unfold_depth)) {
                if (auto* a = std::get_if<label::Act>(&s.label))
                  if (a->name == p.action && a->level == Level::Prioritized)
                    a->level = Level::Ordinary;
                out.push_back({std::move(s.label), deprioritize(s.target, p.action)});
              }
            },
            [](const node::Hole&) { throw ContextError("context not a process"); },
            [](const auto&) {
              throw ProfileError("construct not admitted by a CCS-family calculus");
            },
        },
        t.node().v);
    return out;
  }

  std::set<Offer> offers(const Term& t, int unfold_depth) {
    std::set<Offer> out;
    std::visit(Overloaded{
                   [&](const node::Prefix& p) {
                     if (const auto* a = std::get_if<act::Ccs>(&p.action))
                       out.insert(Offer{a->name, a->polarity});
                   },
                   [&](const node::Sum& s) {
                     for (const auto& b : s.branches) {
                       auto o = offers(b, unfold_depth);
                       out.insert(o.begin(), o.end());
                     }
                   },
                   [&](const node::Par& p) {
                     out = offers(p.left, unfold_depth);
                     auto o = offers(p.right, unfold_depth);
                     out.insert(o.begin(), o.end());
                   },
                   [&](const node::RestrictSet& r) {
                     for (const auto& o : offers(r.body, unfold_depth))
                       if (!r.labels.count(LevelledName{o.name, Level::Ordinary})) out.insert(o);
                   },
                   [&](const node::Relabel& r) {
                     for (const auto& o : offers(r.body, unfold_depth)) {
                       auto it = r.map.find(o.name);
                       out.insert(Offer{it == r.map.end() ? o.name : it->second, o.polarity});
                     }
                   },
                   [&](const node::DefCall& c) {
                     out = offers(unfold(c, unfold_depth), unfold_depth + 1);
                   },
                   [](const auto&) {},
               },
               t.node().v);
    return out;
  }

private:
  void prune(std::vector<Step>& s) const {
    if (has_levels(cfg_.calculus)) preempt(s);
  }

  Term unfold(const node::DefCall& c, int unfold_depth) const {
    if (unfold_depth > kMaxUnfoldDepth)
      throw SemanticError("unguarded recursion through '" + c.name + "'");
    const Definition* d = cfg_.env ? cfg_.env->find(c.name) : nullptr;
    if (!d) throw SemanticError("undefined process identifier '" + c.name + "'");
    return instantiate(d->body, d->params, c.args);
  }

  std::vector<Step> plain_par(const node::Par& p, int unfold_depth) {
    auto ls = steps(p.left, unfold_depth);
    auto rs = steps(p.right, unfold_depth);
    std::vector<Step> out;
    for (const auto& s : ls) out.push_back({s.label, par(s.target, p.right)});
    for (const auto& s : rs) out.push_back({s.label, par(p.left, s.target)});
    for (const auto& l : ls) {
      const auto* la = std::get_if<label::Act>(&l.label);
      if (!la) continue;
      for (const auto& r : rs) {
        const auto* ra = std::get_if<label::Act>(&r.label);
        if (!ra || ra->name != la->name || ra->polarity == la->polarity || ra->level != la->level)
          continue;
        out.push_back({label::Tau{la->level, {}}, par(l.target, r.target)});
      }
    }
    return out;
  }

  std::vector<Step> cpg_par(const node::Par& p, int unfold_depth) {
    auto ls = steps(p.left, unfold_depth);
    auto rs = steps(p.right, unfold_depth);
    const auto left_offers = offers(p.left, unfold_depth);
    const auto right_offers = offers(p.right, unfold_depth);
    std::vector<Step> out;
    for (const auto& s : ls)
      if (!blocked_by(*guard_of(s.label), right_offers))
        out.push_back({s.label, par(s.target, p.right)});
    for (const auto& s : rs)
      if (!blocked_by(*guard_of(s.label), left_offers))
        out.push_back({s.label, par(p.left, s.target)});
    for (const auto& l : ls) {
      const auto* la = std::get_if<label::Act>(&l.label);
      if (!la || blocked_by(la->guard, right_offers)) continue;
      for (const auto& r : rs) {
        const auto* ra = std::get_if<label::Act>(&r.label);
        if (!ra || ra->name != la->name || ra->polarity == la->polarity) continue;
        if (blocked_by(ra->guard, left_offers)) continue;
        GuardSet joint = la->guard;
        joint.insert(ra->guard.begin(), ra->guard.end());
        out.push_back({label::Tau{Level::Ordinary, std::move(joint)}, par(l.target, r.target)});
      }
    }
    return out;
  }

  const CcsFamilyConfig& cfg_;
};

} // namespace

std::vector<Step> ccs_family_steps(const Term& t, const CcsFamilyConfig& cfg) {
  Engine e(cfg);
  auto out = e.steps(t, 0);
  if (has_levels(cfg.calculus)) preempt(out);
  return out;
}

} // namespace procalc::detail

namespace procalc {

std::set<Offer> cpg_offers(const Term& t, const DefinitionEnv& env) {
  detail::CcsFamilyConfig cfg{Calculus::Cpg, &env, nullptr};
  detail::Engine e(cfg);
  return e.offers(t, 0);
}

} // namespace procalc
