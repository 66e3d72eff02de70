#include <doctest.h>

#include "procalc/generate.hpp"
#include "procalc/witness.hpp"
#include "support.hpp"

#include <filesystem>

using namespace procalc;
using procalc::testing::parse;

namespace {

CalculusProfile profile_for(Calculus c, GenConfig& cfg) {
  CalculusProfile p(c);
  cfg.calculus = c;
  if (admits_definitions(c)) {
    p.defs = sample_definitions();
    cfg.use_definitions = true;
  }
  return p;
}

bool is_prio_tau(const Label& l) {
  const auto* t = std::get_if<label::Tau>(&l);
  return t && t->level == Level::Prioritized;
}

Level level_of(const Label& l) {
  if (const auto* t = std::get_if<label::Tau>(&l)) return t->level;
  if (const auto* a = std::get_if<label::Act>(&l)) return a->level;
  return Level::Ordinary;
}

} // namespace

TEST_CASE("term operations on generated terms") {
  Generator g(17);
  for (Calculus c : all_calculi()) {
    GenConfig cfg;
    const CalculusProfile prof = profile_for(c, cfg);
    for (int i = 0; i < 80; ++i) {
      const Term t = g.process(cfg);
      const Term ctx = g.context(cfg);
      CAPTURE(pretty(t));
      CAPTURE(pretty(ctx));

      const NameSet fn = free_names(t);
      const Term plugged = plug(ctx, {t});
      NameSet bound_above = free_names_erasing_holes(ctx);
      bound_above.insert(fn.begin(), fn.end());
      // A relabelling above the hole renames names of t into the pool.
      if (pretty(ctx).find("/") != std::string::npos)
        for (const auto& n : cfg.names) bound_above.insert(Name(n));
      for (const auto& n : free_names(plugged)) CHECK(bound_above.count(n));

      CHECK(alpha_equivalent(apply_subst(t, Substitution{}), t));
      Substitution ident;
      for (const auto& n : fn) ident.map[n] = n;
      CHECK(alpha_equivalent(apply_subst(t, ident), t));
      if (is_closed(t)) CHECK(apply_subst(t, Substitution{{{Name("a"), Name("b")}}}) == t);

      const Term canon = alpha_canonical(t);
      CHECK(alpha_canonical(canon) == canon);
      CHECK(free_names(canon) == fn);

      const Term u = g.process(cfg);
      CHECK(independent(t, u) == independent(u, t));
      CHECK(independent(t, t) == is_closed(t));
    }
  }
}

TEST_CASE("transitions are a function of the alpha class") {
  Generator g(23);
  for (Calculus c : all_calculi()) {
    GenConfig cfg;
    cfg.depth = 3;
    const CalculusProfile prof = profile_for(c, cfg);
    for (int i = 0; i < 60; ++i) {
      const Term t = g.process(cfg);
      CAPTURE(pretty(t));
      const StepSet a = transitions(t, prof);
      const StepSet b = transitions(alpha_canonical(t), prof);
      CHECK(a.steps == b.steps);
      // A re-parsed copy has fresh node identities but the same steps.
      const StepSet r = transitions(parse(pretty(t), prof), prof);
      CHECK(a.steps == r.steps);
    }
  }
}

TEST_CASE("prioritized tau preempts ordinary steps at the root") {
  Generator g(29);
  for (Calculus c : {Calculus::CcsSg, Calculus::CcsPrio}) {
    GenConfig cfg;
    cfg.depth = 3;
    const CalculusProfile prof = profile_for(c, cfg);
    std::size_t with_prio_tau = 0;
    for (int i = 0; i < 300; ++i) {
      // A prioritized handshake placed next to, or in a choice with, noise.
      const Term hs = restrict({{Name("a"), Level::Prioritized}},
                               par(action(Name("a"), Polarity::In, g.process(cfg), Level::Prioritized),
                                   action(Name("a"), Polarity::Out, g.process(cfg), Level::Prioritized)));
      const Term noise = g.process(cfg);
      const Term t = (i % 2) ? par(noise, hs) : choice(hs, noise);
      const StepSet s = transitions(t, prof);
      const bool prio = std::any_of(s.steps.begin(), s.steps.end(),
                                    [](const Step& st) { return is_prio_tau(st.label); });
      if (!prio) continue;
      ++with_prio_tau;
      CAPTURE(pretty(t));
      for (const auto& st : s.steps) CHECK(level_of(st.label) == Level::Prioritized);
    }
    CHECK(with_prio_tau > 100);
  }
}

TEST_CASE("CPG visibility ignores the guard") {
  for (const char* g : {"", "a", "b"}) {
    GuardSet guard;
    if (*g) guard.insert(Name(g));
    CHECK_FALSE(is_visible(Label{label::Tau{Level::Ordinary, guard}}));
    CHECK(is_visible(Label{label::Act{Name("c"), Polarity::Out, Level::Ordinary, guard}}));
  }
}

TEST_CASE("kill steps are eager under their delimiter") {
  Generator g(31);
  GenConfig cfg;
  const CalculusProfile cows = profile_for(Calculus::Cows, cfg);
  std::size_t eager = 0;
  for (int i = 0; i < 400; ++i) {
    const Term body = g.process(cfg);
    const StepSet inner = transitions(body, cows);
    const bool kills = std::any_of(inner.steps.begin(), inner.steps.end(), [](const Step& s) {
      const auto* k = std::get_if<label::Kill>(&s.label);
      return k && k->label.text == "k";
    });
    if (!kills) continue;
    ++eager;
    CAPTURE(pretty(body));
    const StepSet outer = transitions(delimit(KillerLabel{"k"}, body), cows);
    REQUIRE_FALSE(outer.steps.empty());
    for (const auto& s : outer.steps) CHECK(std::holds_alternative<label::Tau>(s.label));
  }
  CHECK(eager > 0);
}

TEST_CASE("pi-MPM synchronisations come from matching pairs") {
  const CalculusProfile mpm(Calculus::PiMpm);
  // Outputs and inputs at equal polyadic subjects synchronise; the
  // continuation sees exactly the substitution match_pattern computes.
  const Term t = parse("(new z)(z:a!<n,m> | z:a?(x,@m).x!<x>)", mpm);
  const StepSet s = transitions(t, mpm);
  REQUIRE(s.steps.size() == 1);
  const auto sub = match_pattern(Pattern{{Name("x"), false}, {Name("m"), true}}, names({"n", "m"}));
  REQUIRE(sub);
  CHECK(alpha_equivalent(s.steps[0].target,
                         parse("(new z)(0 | " + to_string((*sub)(Name("x"))) + "!<n>)", mpm)));
  CHECK(transitions(parse("(new z)(z:a!<n,m> | z:b?(x,@m).x!<x>)", mpm), mpm).steps.empty());
  CHECK(transitions(parse("(new z)(z:a!<n,n> | z:a?(x,@m).x!<x>)", mpm), mpm).steps.empty());
}

TEST_CASE("worked traces pass through the expected intermediate terms") {
  const CalculusProfile mpm(Calculus::PiMpm);
  const Term ctx = parse("(new x)(x?(a).[_1] | x!<b>)", mpm);
  const Term poly = plug(ctx, {parse("(new z)(z:a!<d> | z:b?(w).y!<c>)", mpm)});
  const StepSet s1 = transitions(poly, mpm);
  REQUIRE(s1.steps.size() == 1);
  CHECK(alpha_equivalent(s1.steps[0].target,
                         parse("(new x)((new z)(z:b!<d> | z:b?(w).y!<c>) | 0)", mpm)));
  const StepSet s2 = transitions(s1.steps[0].target, mpm);
  REQUIRE(s2.steps.size() == 1);
  CHECK(alpha_equivalent(s2.steps[0].target, parse("(new x)((new z)(0 | y!<c>) | 0)", mpm)));

  const Term pat = plug(ctx, {parse("(new z)(z!<a> | z?(@b).y!<c>)", mpm)});
  const StepSet p1 = transitions(pat, mpm);
  REQUIRE(p1.steps.size() == 1);
  CHECK(alpha_equivalent(p1.steps[0].target,
                         parse("(new x)((new z)(z!<b> | z?(@b).y!<c>) | 0)", mpm)));
}

TEST_CASE("visibility agrees with some visible label being performable") {
  Generator g(37);
  for (Calculus c : all_calculi()) {
    GenConfig cfg;
    const CalculusProfile prof = profile_for(c, cfg);
    for (int i = 0; i < 40; ++i) {
      const Term t = g.process(cfg);
      CAPTURE(pretty(t));
      const Lts l = explore(t, prof);
      if (!l.complete) continue;
      const bool vis = is_visible(l, l.root).holds();
      bool some = false;
      for (const auto& e : l.edges) {
        if (!is_visible(e.label)) continue;
        LabelPattern pat;
        if (const auto* a = std::get_if<label::Act>(&e.label)) {
          pat.kind = LabelPattern::Kind::Act;
          pat.subject = {a->name};
          pat.polarity = a->polarity;
          pat.level = a->level;
        } else if (const auto* o = std::get_if<label::Out>(&e.label)) {
          pat.kind = LabelPattern::Kind::Out;
          pat.subject = o->subject;
        } else if (const auto* in = std::get_if<label::In>(&e.label)) {
          pat.kind = LabelPattern::Kind::In;
          pat.subject = in->subject;
        } else {
          continue;
        }
        if (can_perform(l, l.root, pat).holds()) some = true;
      }
      CHECK(vis == some);
    }
  }
}

TEST_CASE("complete spaces are stable under larger bounds") {
  Generator g(41);
  for (Calculus c : all_calculi()) {
    GenConfig cfg;
    const CalculusProfile prof = profile_for(c, cfg);
    for (int i = 0; i < 30; ++i) {
      const Term t = g.process(cfg);
      CAPTURE(pretty(t));
      ExplorationBounds b;
      b.max_states = 2000;
      const Lts l = explore(t, prof, b);
      if (!l.complete) continue;
      const Lts big = explore(t, prof, b.scaled(2));
      REQUIRE(big.complete);
      REQUIRE(big.size() == l.size());
      CHECK(big.edges == l.edges);
      for (std::size_t s = 0; s < l.size(); ++s) CHECK(big.states[s].term == l.states[s].term);
    }
  }
}

TEST_CASE("witness verification is deterministic and mode-monotone") {
  const auto dir = std::filesystem::path(PROCALC_SOURCE_DIR) / "corpus";
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() != ".json") continue;
    WitnessCase w = load_witness_file(e.path());
    CAPTURE(w.id);
    const WitnessReport a = verify_witness(w);
    const WitnessReport b = verify_witness(w);
    CHECK(a.overall == b.overall);
    CHECK(a.ci_visible.trace == b.ci_visible.trace);
    CHECK(testing::replay(plug(w.context, {w.invisible}), w.profile, w.bounds, a.ci_visible.trace));
    if (w.mode == WitnessMode::Weak && a.overall == Overall::ViolationConfirmed) {
      w.mode = WitnessMode::Strong;
      CHECK(verify_witness(w).overall == Overall::ViolationConfirmed);
    }
  }
}
