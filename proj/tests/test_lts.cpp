#include <doctest.h>

#include <json.hpp>

#include "support.hpp"

using namespace procalc;
using procalc::testing::parse;
using procalc::testing::replay;

TEST_CASE("explicit state space of a small parallel") {
  const CalculusProfile ccs(Calculus::Ccs);
  const Lts l = explore(parse("a.0 | 'a.0"), ccs);
  CHECK(l.complete);
  CHECK(l.size() == 4);
  // tau, a and 'a from the root, then one step from each half-finished state.
  CHECK(l.edges.size() == 5);
  CHECK(l.cut_reason.empty());
  for (const auto& s : l.states) CHECK(s.expanded);
}

TEST_CASE("weak reachability") {
  const CalculusProfile ccs(Calculus::Ccs);
  const Lts l = explore(parse("tau.tau.a.0"), ccs);
  CHECK(weak_reach(l, l.root).size() == 3);
  const Lts m = explore(parse("a.tau.0"), ccs);
  CHECK(weak_reach(m, m.root).size() == 1);
}

TEST_CASE("visibility verdicts") {
  const CalculusProfile ccs(Calculus::Ccs);
  const ExplorationBounds b;

  const Verdict v = is_visible(parse("tau.a.0"), ccs, b);
  REQUIRE(v.holds());
  CHECK(v.trace.size() == 2);
  CHECK(replay(parse("tau.a.0"), ccs, b, v.trace));

  CHECK(is_invisible(parse("(a.0 | 'a.0)\\{a}"), ccs, b).holds());
  CHECK(is_invisible(nil(), ccs, b).holds());
  CHECK(is_visible(nil(), ccs, b).fails());

  CalculusProfile rec(Calculus::Ccs);
  rec.defs.define("Loop", {{}, parse_syntax("tau.Loop<>")});
  CHECK(is_invisible(parse("Loop<>", rec), rec, b).holds());

  const CalculusProfile cows(Calculus::Cows);
  CHECK(is_invisible(parse("kill(k)", cows), cows, b).holds());
}

TEST_CASE("shortest trace is found") {
  const CalculusProfile ccs(Calculus::Ccs);
  const Term t = parse("tau.tau.tau.a.0 + tau.b.0");
  const Verdict v = is_visible(t, ccs);
  REQUIRE(v.holds());
  CHECK(v.trace.size() == 2);
  CHECK(replay(t, ccs, {}, v.trace));
}

TEST_CASE("can_perform") {
  const CalculusProfile pi(Calculus::Pi);
  const Term t = parse("(new x)(x?(a).[a=b]'y<c> | x!<b>)", pi);
  const Verdict v = can_perform(t, pi, {}, parse_label_pattern("y!<c>"));
  REQUIRE(v.holds());
  CHECK(testing::labels_of(v.trace, Calculus::Pi) == std::vector<std::string>{"tau", "y!<c>"});
  CHECK(replay(t, pi, {}, v.trace));
  CHECK(can_perform(t, pi, {}, parse_label_pattern("y!<d>")).fails());
}

TEST_CASE("bounds make verdicts unknown rather than wrong") {
  const CalculusProfile ccs(Calculus::Ccs);
  std::string deep;
  for (int i = 0; i < 20; ++i) deep += "tau.";
  deep += "a.0";
  ExplorationBounds small;
  small.max_depth = 5;
  const Verdict v = is_visible(parse(deep), ccs, small);
  CHECK(v.unknown());
  CHECK_FALSE(v.reason.empty());
  CHECK(is_visible(parse(deep), ccs, small.scaled(8)).holds());

  ExplorationBounds few;
  few.max_states = 3;
  const Lts l = explore(parse(deep), ccs, few);
  CHECK_FALSE(l.complete);
  CHECK(l.cut_reason == "max_states");
  CHECK(is_invisible(parse(deep), ccs, few).unknown());
}

TEST_CASE("replication bound leaves the space incomplete") {
  const CalculusProfile pi(Calculus::Pi);
  ExplorationBounds b;
  b.max_bang_unfold = 2;
  const Lts l = explore(parse("!tau.0", pi), pi, b);
  CHECK_FALSE(l.complete);
  CHECK(l.cut_reason == "max_bang_unfold");
  CHECK(is_invisible(parse("!tau.0", pi), pi, b).unknown());
  CHECK(is_visible(parse("!x!<b>", pi), pi, b).holds());
}

TEST_CASE("verdict negation") {
  Verdict h{Verdict::Kind::Holds, {}, ""};
  CHECK(Verdict::negate(h).fails());
  Verdict u{Verdict::Kind::Unknown, {}, "cut"};
  CHECK(Verdict::negate(u).unknown());
  CHECK(to_string(Verdict::Kind::Holds) == "holds");
}

TEST_CASE("pair exploration shares the name universe") {
  const CalculusProfile pi(Calculus::Pi);
  const auto [lq, lp] = explore_pair(parse("x?(y).0", pi), parse("z?(w).0", pi), pi);
  std::set<std::string> q_in, p_in;
  for (const auto& e : lq.edges) q_in.insert(to_string(e.label));
  CHECK(q_in.count("x?<z>") == 1);
  CHECK(lq.states[lq.root].known == lp.states[lp.root].known);
}

TEST_CASE("exports") {
  const CalculusProfile ccs(Calculus::Ccs);
  const Lts l = explore(parse("a.0 | 'a.0"), ccs);
  const std::string dot = to_dot(l);
  CHECK(dot.find("digraph") != std::string::npos);
  const auto j = nlohmann::json::parse(to_json(l));
  CHECK(j["states"].size() == 4);
  CHECK(j["edges"].size() == 5);
  CHECK(j["complete"] == true);
  CHECK(j["calculus"] == "ccs");
}

TEST_CASE("from_edges") {
  const Lts l = Lts::from_edges(3, 0,
                                {{0, Label{label::Tau{}}, 1},
                                 {1, Label{label::Act{Name("a"), Polarity::In, Level::Ordinary, {}}}, 2}});
  CHECK(l.complete);
  CHECK(l.outgoing(0).size() == 1);
  CHECK(is_visible(l, 0).holds());
  CHECK(is_invisible(l, 2).holds());
}
