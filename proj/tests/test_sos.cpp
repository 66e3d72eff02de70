#include <doctest.h>

#include "procalc/error.hpp"
#include "support.hpp"

using namespace procalc;
using procalc::testing::labels_of;
using procalc::testing::parse;

using L = std::vector<std::string>;

TEST_CASE("CCS rules") {
  const CalculusProfile ccs(Calculus::Ccs);
  CHECK(transitions(nil(), ccs).steps.empty());
  CHECK(labels_of(transitions(parse("a.0 | 'a.0"), ccs)) == L{"'a", "a", "tau"});
  CHECK(labels_of(transitions(parse("(a.0 | 'a.0)\\{a}"), ccs)) == L{"tau"});
  CHECK(labels_of(transitions(parse("a.0 + b.0"), ccs)) == L{"a", "b"});
  CHECK(labels_of(transitions(parse("a.0[b/a]"), ccs)) == L{"b"});

  CalculusProfile rec(Calculus::Ccs);
  rec.defs.define("A", {{Name("x")}, parse_syntax("x.A<x>")});
  const Term a = parse("A<a>", rec);
  const StepSet s = transitions(a, rec);
  REQUIRE(s.steps.size() == 1);
  CHECK(to_string(s.steps[0].label) == "a");
  CHECK(s.steps[0].target == a);

  CalculusProfile bad(Calculus::Ccs);
  bad.defs.define("B", {{}, parse_syntax("B<>")});
  CHECK_THROWS_AS(transitions(parse("B<>", bad), bad), SemanticError);
  CHECK_THROWS_AS(transitions(parse("a.[_1]"), ccs), ContextError);
}

TEST_CASE("pi-MPM rules") {
  const CalculusProfile mpm(Calculus::PiMpm);
  const StepSet ex1 = transitions(parse("(new x)(x?(a).[a=b]'y<c> | x!<b>)", mpm), mpm);
  REQUIRE(ex1.steps.size() == 1);
  CHECK(to_string(ex1.steps[0].label) == "tau");
  CHECK(alpha_equivalent(ex1.steps[0].target, parse("(new x)([b=b]'y<c> | 0)", mpm)));

  CHECK(transitions(parse("(new z)(z:a!<d> | z:b?(w).y!<c>)", mpm), mpm).steps.empty());

  const StepSet pat = transitions(parse("(new z)(z!<b> | z?(@b).y!<c>)", mpm), mpm);
  REQUIRE(pat.steps.size() == 1);
  CHECK(alpha_equivalent(pat.steps[0].target, parse("(new z)(0 | y!<c>)", mpm)));

  CHECK(transitions(parse("(new z)(z!<a> | z?(@b).y!<c>)", mpm), mpm).steps.empty());
}

TEST_CASE("pi extrusion and early input") {
  const CalculusProfile pi(Calculus::Pi);
  const StepSet out = transitions(parse("(new z)a!<z>.z!<c>", pi), pi);
  REQUIRE(out.steps.size() == 1);
  CHECK(to_string(out.steps[0].label) == "(new v#0)a!<v#0>");

  // Inputs range over the free names plus one fresh name.
  const StepSet in = transitions(parse("x?(y).y!<a>", pi), pi);
  CHECK(labels_of(in) == L{"x?<a>", "x?<v#0>", "x?<x>"});

  // Scope extrusion by communication.
  const StepSet sync = transitions(parse("(new z)a!<z> | a?(w).w!<c>", pi), pi);
  bool closed = false;
  for (const auto& s : sync.steps)
    if (to_string(s.label) == "tau") closed = free_names(s.target) == NameSet{Name("c")};
  CHECK(closed);
}

TEST_CASE("replication is bounded") {
  const CalculusProfile pi(Calculus::Pi);
  SosOptions o;
  o.max_bang_unfold = 1;
  const StepSet s = transitions(parse("!tau.0", pi), pi, o);
  CHECK(s.steps.size() == 1);
  const StepSet t = transitions(s.steps[0].target, pi, o);
  CHECK(t.truncated);
}

TEST_CASE("match_pattern") {
  CHECK_FALSE(match_pattern(Pattern{{Name("b"), true}}, names({"a"})));
  auto s = match_pattern(placeholders({"x"}), names({"a"}));
  REQUIRE(s);
  CHECK((*s)(Name("x")) == Name("a"));
  auto m = match_pattern(Pattern{{Name("x"), false}, {Name("b"), true}, {Name("y"), false}},
                         names({"n", "b", "m"}));
  REQUIRE(m);
  CHECK(m->map.size() == 2);
  CHECK((*m)(Name("y")) == Name("m"));
  CHECK_FALSE(match_pattern(placeholders({"x"}), names({"a", "b"})));
}

TEST_CASE("BCCSP with priority") {
  CalculusProfile th(Calculus::BccspTheta);
  th.order = PriorityOrder(std::set<std::pair<std::string, std::string>>{{"a", "tau"}});
  const StepSet s = transitions(parse("theta(a.0 + 0)", th), th);
  REQUIRE(s.steps.size() == 1);
  CHECK(to_string(s.steps[0].label) == "a");
  CHECK(s.steps[0].target == parse("theta(0)", th));
  CHECK(labels_of(transitions(parse("theta(a.0 + tau.0)", th), th)) == L{"tau"});
  const CalculusProfile flat(Calculus::BccspTheta);
  CHECK(labels_of(transitions(parse("theta(a.0 + b.0)", flat), flat)) == L{"a", "b"});
}

TEST_CASE("CPG guards") {
  const CalculusProfile cpg(Calculus::Cpg);
  CHECK(cpg_offers(parse("'a.0", cpg)) == std::set<Offer>{{Name("a"), Polarity::Out}});
  CHECK(cpg_offers(parse("{a}:b.'c.0", cpg)) == std::set<Offer>{{Name("b"), Polarity::In}});
  CHECK(cpg_offers(nil()).empty());

  CHECK(labels_of(transitions(parse("((a.0 + {a}:b.'c.0) | 'b.0 | 0)\\{a,b}", cpg), cpg),
                  Calculus::Cpg) == L{"{a}:tau"});
  CHECK(labels_of(transitions(parse("((a.0 + {a}:b.'c.0) | 'b.0 | 'a.0)\\{a,b}", cpg), cpg),
                  Calculus::Cpg) == L{"{}:tau"});
  CHECK(labels_of(transitions(parse("{a}:b.0 | 0", cpg), cpg), Calculus::Cpg) == L{"{a}:b"});
}

TEST_CASE("global priority with preemption") {
  const CalculusProfile sg(Calculus::CcsSg);
  CHECK(labels_of(transitions(parse("(_a.0 | '_a.0)\\{_a} + 'b.0", sg), sg)) == L{"_tau"});
  CHECK(labels_of(transitions(parse("(_a.0 | 0)\\{_a} + 'b.0", sg), sg)) == L{"'b"});
  // Prioritized visible actions do not preempt.
  CHECK(labels_of(transitions(parse("_a.0 + b.0", sg), sg)) == L{"_a", "b"});

  const CalculusProfile prio(Calculus::CcsPrio);
  CHECK(labels_of(transitions(parse("up((_a.0 | '_a.0)\\{_a} + 'b.0, b)", prio), prio)) ==
        L{"_tau"});
  CHECK(labels_of(transitions(parse("up((_a.0 | 0)\\{_a} + 'b.0, b)", prio), prio)) == L{"'_b"});
  CHECK(labels_of(transitions(parse("down(_b.0, b)", prio), prio)) == L{"b"});
}

TEST_CASE("COWS kill and protection") {
  const CalculusProfile cows(Calculus::Cows);
  CHECK(labels_of(transitions(parse("[k](0 | a!<n>)", cows), cows)) == L{"a!<n>"});
  const StepSet k = transitions(parse("[k](kill(k) | a!<n>)", cows), cows);
  REQUIRE(k.steps.size() == 1);
  CHECK(to_string(k.steps[0].label) == "tau");
  CHECK(k.steps[0].target == parse("[k](0 | 0)", cows));
  CHECK(labels_of(transitions(parse("kill(k)", cows), cows)) == L{"kill(k)"});

  CHECK(halt(parse("a!<n>", cows)) == nil());
  CHECK(halt(nil()) == nil());
  CHECK(halt(parse("[l](b?(x).0)", cows)) == parse("[l]0", cows));
}

TEST_CASE("step sets are canonical and deterministic") {
  const CalculusProfile pi(Calculus::Pi);
  const Term t = parse("(new x)(x!<a> | x?(y).(new z)y!<z>) | b?(w).0", pi);
  const StepSet a = transitions(t, pi);
  const StepSet b = transitions(t, pi);
  CHECK(a.steps == b.steps);
  CHECK(std::is_sorted(a.steps.begin(), a.steps.end()));
  for (const auto& s : a.steps) CHECK(s.target == alpha_canonical(s.target));
}
