#include "procalc/sos.hpp"

#include <algorithm>

#include "procalc/error.hpp"
#include "sos_internal.hpp"

namespace procalc {

namespace detail {

StepSet finish(std::vector<Step> steps, bool truncated) {
  for (auto& s : steps) s.target = alpha_canonical(s.target);
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  return StepSet{std::move(steps), truncated};
}

} // namespace detail

bool is_visible(const Label& l) {
  return std::holds_alternative<label::Act>(l) || std::holds_alternative<label::Out>(l) ||
         std::holds_alternative<label::In>(l);
}

NameSet label_names(const Label& l) {
  NameSet out;
  std::visit(detail::Overloaded{
                 [&](const label::Act& a) { out.insert(a.name); },
                 [&](const label::Out& o) {
                   out.insert(o.subject.begin(), o.subject.end());
                   out.insert(o.payload.begin(), o.payload.end());
                 },
                 [&](const label::In& i) {
                   out.insert(i.subject.begin(), i.subject.end());
                   out.insert(i.received.begin(), i.received.end());
                 },
                 [](const auto&) {},
             },
             l);
  return out;
}

std::string order_key(const Label& l) {
  return std::visit(detail::Overloaded{
                        [](const label::Tau& t) {
                          return std::string(t.level == Level::Prioritized ? "_tau" : "tau");
                        },
                        [](const label::Act& a) {
                          std::string s = a.polarity == Polarity::Out ? "'" : "";
                          if (a.level == Level::Prioritized) s += "_";
                          return s + to_string(a.name);
                        },
                        [](const auto&) { return std::string(); },
                    },
                    l);
}

std::optional<Substitution> match_pattern(const Pattern& pat, const Tuple& tuple) {
  if (pat.size() != tuple.size()) return std::nullopt;
  Substitution sigma;
  for (std::size_t i = 0; i < pat.size(); ++i) {
    const auto& item = pat[i];
    if (item.is_protected) {
      if (item.name != tuple[i]) return std::nullopt;
      continue;
    }
    auto [it, inserted] = sigma.map.emplace(item.name, tuple[i]);
    if (!inserted && it->second != tuple[i]) return std::nullopt;
  }
  return sigma;
}

StepSet transitions_ccs(const Term& t, const DefinitionEnv& env) {
  detail::CcsFamilyConfig cfg{Calculus::Ccs, &env, nullptr};
  return detail::finish(detail::ccs_family_steps(t, cfg), false);
}

StepSet transitions_bccsp(const Term& t, const PriorityOrder& order) {
  detail::CcsFamilyConfig cfg{Calculus::BccspTheta, nullptr, &order};
  return detail::finish(detail::ccs_family_steps(t, cfg), false);
}

StepSet transitions_cpg(const Term& t, const DefinitionEnv& env) {
  detail::CcsFamilyConfig cfg{Calculus::Cpg, &env, nullptr};
  return detail::finish(detail::ccs_family_steps(t, cfg), false);
}

StepSet transitions_ccs_priority(const Term& t, const DefinitionEnv& env, PriorityVariant v) {
  detail::CcsFamilyConfig cfg{v == PriorityVariant::Sg ? Calculus::CcsSg : Calculus::CcsPrio, &env,
                              nullptr};
  return detail::finish(detail::ccs_family_steps(t, cfg), false);
}

StepSet transitions_pimpm(const Term& t, const SosOptions& opts) {
  detail::NamePassingConfig cfg{false, &opts};
  auto raw = detail::name_passing_steps(alpha_canonical(t), cfg);
  return detail::finish(std::move(raw.steps), raw.truncated);
}

StepSet transitions_cows(const Term& t, const SosOptions& opts) {
  detail::NamePassingConfig cfg{true, &opts};
  auto raw = detail::name_passing_steps(alpha_canonical(t), cfg);
  return detail::finish(std::move(raw.steps), raw.truncated);
}

StepSet detail::dispatch(const Term& t, const CalculusProfile& p, const SosOptions& opts) {
  switch (p.calculus) {
  case Calculus::Ccs:
    return transitions_ccs(t, p.defs);
  case Calculus::Pi:
  case Calculus::PiMpm:
    return transitions_pimpm(t, opts);
  case Calculus::BccspTheta:
    return transitions_bccsp(t, p.order);
  case Calculus::Cpg:
    return transitions_cpg(t, p.defs);
  case Calculus::CcsSg:
    return transitions_ccs_priority(t, p.defs, PriorityVariant::Sg);
  case Calculus::CcsPrio:
    return transitions_ccs_priority(t, p.defs, PriorityVariant::Prio);
  case Calculus::Cows:
    return transitions_cows(t, opts);
  }
  throw SemanticError("unknown calculus");
}

StepSet transitions(const Term& t, const CalculusProfile& p, const SosOptions& opts) {
  if (!is_process(t)) throw ContextError("context not a process");
  require_profile(t, p);
  return detail::dispatch(t, p, opts);
}

} // namespace procalc
