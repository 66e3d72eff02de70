#include "procalc/generate.hpp"

#include <functional>

#include "procalc/surface.hpp"

namespace procalc {

DefinitionEnv sample_definitions() {
  DefinitionEnv env;
  env.define("Loop", {{}, parse_syntax("tau.Loop<>")});
  env.define("Cycle", {{Name("a"), Name("b")}, parse_syntax("a.'b.Cycle<a,b>")});
  env.define("Ping", {{Name("a")}, parse_syntax("a.Ping<a> + tau.0")});
  return env;
}

namespace {

bool ccs_family(Calculus c) {
  return c == Calculus::Ccs || c == Calculus::Cpg || c == Calculus::CcsSg ||
         c == Calculus::CcsPrio;
}
bool leveled(Calculus c) { return c == Calculus::CcsSg || c == Calculus::CcsPrio; }

} // namespace

Name Generator::any_name(const GenConfig& cfg, const std::vector<Name>& scope) {
  if (!scope.empty() && coin(0.7)) return scope[pick(static_cast<int>(scope.size()))];
  return Name(cfg.names[pick(static_cast<int>(cfg.names.size()))]);
}

Tuple Generator::tuple(const GenConfig& cfg, const std::vector<Name>& scope, int max_len) {
  Tuple t;
  const int len = 1 + pick(max_len);
  for (int i = 0; i < len; ++i) t.push_back(any_name(cfg, scope));
  return t;
}

Term Generator::process(const GenConfig& cfg) {
  std::vector<Name> scope;
  for (const auto& n : cfg.names) scope.emplace_back(n);
  return gen(cfg, cfg.depth, scope);
}

Term Generator::gen(const GenConfig& cfg, int depth, std::vector<Name>& scope) {
  switch (cfg.calculus) {
  case Calculus::Pi:
  case Calculus::PiMpm:
    return gen_pi(cfg, depth, scope);
  case Calculus::Cows:
    return gen_cows(cfg, depth, scope);
  default:
    return gen_ccs(cfg, depth);
  }
}

Term Generator::gen_ccs_prefix(const GenConfig& cfg, int depth) {
  const Calculus c = cfg.calculus;
  GuardSet guard;
  if (c == Calculus::Cpg && coin(0.3)) guard.insert(Name(cfg.names[pick(static_cast<int>(cfg.names.size()))]));
  Term cont = gen_ccs(cfg, depth - 1);
  if (coin(0.25)) return prefix(act::Tau{std::move(guard)}, cont);
  const Name n(cfg.names[pick(static_cast<int>(cfg.names.size()))]);
  const Polarity pol = coin() ? Polarity::In : Polarity::Out;
  const Level lvl = leveled(c) && coin(0.3) ? Level::Prioritized : Level::Ordinary;
  return action(n, pol, cont, lvl, std::move(guard));
}

Term Generator::gen_ccs(const GenConfig& cfg, int depth) {
  const Calculus c = cfg.calculus;
  const bool defs = cfg.use_definitions && ccs_family(c);
  auto rand_name = [&] { return Name(cfg.names[pick(static_cast<int>(cfg.names.size()))]); };
  auto call_term = [&]() -> Term {
    switch (pick(3)) {
    case 0:
      return call("Loop", {});
    case 1:
      return call("Cycle", {rand_name(), rand_name()});
    default:
      return call("Ping", {rand_name()});
    }
  };
  if (depth <= 0) {
    if (defs && coin(0.3)) return call_term();
    return nil();
  }
  while (true) {
    switch (pick(9)) {
    case 0:
    case 1:
    case 2:
      return gen_ccs_prefix(cfg, depth);
    case 3:
      return choice(gen_ccs(cfg, depth - 1), gen_ccs(cfg, depth - 1));
    case 4:
      if (!cfg.allow_par || c == Calculus::BccspTheta) continue;
      return par(gen_ccs(cfg, depth - 1), gen_ccs(cfg, depth - 1));
    case 5: {
      if (!ccs_family(c)) continue;
      std::set<LevelledName> labels{{rand_name(), Level::Ordinary}};
      if (coin()) labels.insert({rand_name(), leveled(c) && coin() ? Level::Prioritized : Level::Ordinary});
      return restrict(std::move(labels), gen_ccs(cfg, depth - 1));
    }
    case 6: {
      if (!ccs_family(c)) continue;
      const Name from = rand_name();
      Name to = rand_name();
      if (to == from) continue;
      return relabel(gen_ccs(cfg, depth - 1), {{from, to}});
    }
    case 7:
      if (c == Calculus::BccspTheta) return theta(gen_ccs(cfg, depth - 1));
      if (c == Calculus::CcsPrio)
        return coin() ? prioritize(gen_ccs(cfg, depth - 1), rand_name())
                      : deprioritize(gen_ccs(cfg, depth - 1), rand_name());
      continue;
    default:
      if (!defs) return nil();
      return call_term();
    }
  }
}

Term Generator::gen_pi(const GenConfig& cfg, int depth, std::vector<Name>& scope) {
  const bool mpm = cfg.calculus == Calculus::PiMpm;
  const int arity = mpm ? 2 : 1;
  if (depth <= 0) {
    if (coin()) return nil();
    return pi_out(tuple(cfg, scope, arity), tuple(cfg, scope, arity));
  }
  while (true) {
    switch (pick(8)) {
    case 0:
    case 1: {
      Term cont = coin(0.3) ? nil() : gen_pi(cfg, depth - 1, scope);
      return pi_out(tuple(cfg, scope, arity), tuple(cfg, scope, arity), cont);
    }
    case 2: {
      Tuple subject = tuple(cfg, scope, arity);
      Pattern pat;
      const int len = 1 + pick(arity);
      std::vector<Name> inner = scope;
      for (int i = 0; i < len; ++i) {
        if (mpm && coin(0.3)) {
          pat.push_back({any_name(cfg, scope), true});
        } else {
          Name x("x" + std::to_string(next_binder_++));
          pat.push_back({x, false});
          inner.push_back(x);
        }
      }
      return pi_in(std::move(subject), std::move(pat), gen_pi(cfg, depth - 1, inner));
    }
    case 3:
      return tau(gen_pi(cfg, depth - 1, scope));
    case 4:
      return choice(gen_pi(cfg, depth - 1, scope), gen_pi(cfg, depth - 1, scope));
    case 5:
      if (!cfg.allow_par) continue;
      return par(gen_pi(cfg, depth - 1, scope), gen_pi(cfg, depth - 1, scope));
    case 6: {
      Name z("z" + std::to_string(next_binder_++));
      std::vector<Name> inner = scope;
      inner.push_back(z);
      return nu(z, gen_pi(cfg, depth - 1, inner));
    }
    default:
      if (!cfg.allow_match) continue;
      return match(any_name(cfg, scope), any_name(cfg, scope), gen_pi(cfg, depth - 1, scope));
    }
  }
}

Term Generator::gen_cows(const GenConfig& cfg, int depth, std::vector<Name>& scope) {
  auto killer = [&] { return KillerLabel{coin() ? "k" : "l"}; };
  if (depth <= 0) {
    switch (pick(3)) {
    case 0:
      return nil();
    case 1:
      return kill(killer());
    default:
      return pi_out(tuple(cfg, scope, 2), tuple(cfg, scope, 2));
    }
  }
  switch (pick(5)) {
  case 0:
    return pi_out(tuple(cfg, scope, 2), tuple(cfg, scope, 2));
  case 1: {
    Tuple subject = tuple(cfg, scope, 2);
    Pattern pat;
    std::vector<Name> inner = scope;
    const int len = 1 + pick(2);
    for (int i = 0; i < len; ++i) {
      Name x("x" + std::to_string(next_binder_++));
      pat.push_back({x, false});
      inner.push_back(x);
    }
    return pi_in(std::move(subject), std::move(pat), gen_cows(cfg, depth - 1, inner));
  }
  case 2:
    return par(gen_cows(cfg, depth - 1, scope), gen_cows(cfg, depth - 1, scope));
  case 3:
    return delimit(killer(), gen_cows(cfg, depth - 1, scope));
  default:
    return kill(killer());
  }
}

Term Generator::context(const GenConfig& cfg) {
  std::vector<Name> scope;
  for (const auto& n : cfg.names) scope.emplace_back(n);
  return gen_context(cfg, cfg.depth, scope);
}

Term Generator::gen_context(const GenConfig& cfg, int depth, std::vector<Name>& scope) {
  if (depth <= 0 || coin(0.2)) return hole(1);
  const Calculus c = cfg.calculus;
  auto sub = [&] { return gen_context(cfg, depth - 1, scope); };
  auto proc = [&] { return gen(cfg, depth - 1, scope); };
  auto rand_name = [&] { return Name(cfg.names[pick(static_cast<int>(cfg.names.size()))]); };
  while (true) {
    const int k = pick(7);
    if (c == Calculus::Cows) {
      if (k < 3) return coin() ? par(sub(), proc()) : par(proc(), sub());
      if (k < 5) return delimit(KillerLabel{coin() ? "k" : "l"}, sub());
      Pattern pat{{Name("x" + std::to_string(next_binder_++)), false}};
      return pi_in(tuple(cfg, scope, 1), std::move(pat), sub());
    }
    if (cfg.calculus == Calculus::Pi || cfg.calculus == Calculus::PiMpm) {
      switch (k) {
      case 0:
        return pi_out(tuple(cfg, scope, 1), tuple(cfg, scope, 1), sub());
      case 1: {
        Name x("x" + std::to_string(next_binder_++));
        return pi_in(tuple(cfg, scope, 1), Pattern{{x, false}}, sub());
      }
      case 2:
        return coin() ? choice(sub(), proc()) : choice(proc(), sub());
      case 3:
      case 4:
        if (!cfg.allow_par) continue;
        return coin() ? par(sub(), proc()) : par(proc(), sub());
      case 5: {
        Name z("z" + std::to_string(next_binder_++));
        return nu(z, sub());
      }
      default:
        if (!cfg.allow_match) return tau(sub());
        return match(any_name(cfg, scope), any_name(cfg, scope), sub());
      }
    }
    switch (k) {
    case 0: {
      const Polarity pol = coin() ? Polarity::In : Polarity::Out;
      return coin(0.3) ? tau(sub()) : action(rand_name(), pol, sub());
    }
    case 1:
      return coin() ? choice(sub(), proc()) : choice(proc(), sub());
    case 2:
    case 3:
      if (!cfg.allow_par || c == Calculus::BccspTheta) continue;
      return coin() ? par(sub(), proc()) : par(proc(), sub());
    case 4:
      if (c == Calculus::BccspTheta) return theta(sub());
      return restrict({{rand_name(), Level::Ordinary}}, sub());
    case 5: {
      if (c == Calculus::BccspTheta) continue;
      const Name from = rand_name();
      const Name to = rand_name();
      if (from == to) continue;
      return relabel(sub(), {{from, to}});
    }
    default:
      if (c == Calculus::CcsPrio) return prioritize(sub(), rand_name());
      if (c == Calculus::BccspTheta) return theta(sub());
      continue;
    }
  }
}

Term Generator::hidden(const GenConfig& cfg) {
  const Calculus c = cfg.calculus;
  if (c == Calculus::BccspTheta) {
    // No hiding operator: build from tau, choice and theta only.
    std::function<Term(int)> taus = [&](int d) -> Term {
      if (d <= 0 || coin(0.3)) return nil();
      switch (pick(3)) {
      case 0:
        return tau(taus(d - 1));
      case 1:
        return choice(taus(d - 1), taus(d - 1));
      default:
        return theta(taus(d - 1));
      }
    };
    return taus(cfg.depth);
  }
  if (c == Calculus::Cows) {
    if (coin()) return nil();
    return delimit(KillerLabel{"k"}, coin() ? kill(KillerLabel{"k"}) : nil());
  }
  Term body = process(cfg);
  if (c == Calculus::Pi || c == Calculus::PiMpm) {
    for (auto it = cfg.names.rbegin(); it != cfg.names.rend(); ++it) body = nu(Name(*it), body);
    return body;
  }
  std::set<LevelledName> labels;
  for (const auto& n : cfg.names) {
    labels.insert({Name(n), Level::Ordinary});
    if (leveled(c)) labels.insert({Name(n), Level::Prioritized});
  }
  return restrict(std::move(labels), body);
}

Term Generator::hidden_open(const GenConfig& cfg) {
  GenConfig open = cfg;
  open.names.push_back("d");
  Term body = process(open);
  for (auto it = cfg.names.rbegin(); it != cfg.names.rend(); ++it) body = nu(Name(*it), body);
  return body;
}

} // namespace procalc
