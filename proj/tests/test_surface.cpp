#include <doctest.h>

#include "procalc/error.hpp"
#include "support.hpp"

using namespace procalc;
using procalc::testing::parse;

namespace {

void round_trips(const std::string& src, Calculus c) {
  CAPTURE(src);
  const CalculusProfile p(c);
  const Term t = parse(src, p);
  const std::string printed = pretty(t);
  CAPTURE(printed);
  CHECK(alpha_equivalent(parse(printed, p), t));
}

} // namespace

TEST_CASE("round trip of hand-written terms") {
  round_trips("(a.0 | 'a.0)\\{a}", Calculus::Ccs);
  round_trips("a.b.0 + 'c.0 + tau.0", Calculus::Ccs);
  round_trips("(a.0 + b.0) | c.0", Calculus::Ccs);
  round_trips("a.(b.0 | c.0)", Calculus::Ccs);
  round_trips("(a.0 | b.0)[c/a]", Calculus::Ccs);
  round_trips("(new x)(x?(a).[a=b]'y<c> | x!<b>)", Calculus::Pi);
  round_trips("(new x y)x!<y>.0", Calculus::Pi);
  round_trips("!x?(y).y!<a>", Calculus::Pi);
  round_trips("(new z)(z:a!<d> | z:b?(w).y!<c>)", Calculus::PiMpm);
  round_trips("(new z)(z!<a> | z?(@b).y!<c>)", Calculus::PiMpm);
  round_trips("theta(a.0 + tau.0)", Calculus::BccspTheta);
  round_trips("((a.0 + {a}:b.'c.0) | 'b.0)\\{a,b}", Calculus::Cpg);
  round_trips("(_a.0 | '_a.0)\\{_a} + 'b.0", Calculus::CcsSg);
  round_trips("up(down(_a.0, a) + 'b.0, b)", Calculus::CcsPrio);
  round_trips("[k](kill(k) | a!<n>)", Calculus::Cows);
  round_trips("[k](a?(x).kill(k) | b!<n>)", Calculus::Cows);
}

TEST_CASE("pretty output is stable") {
  CHECK(pretty(parse("(a.0|'a.0)\\{a}")) == "(a.0 | 'a.0)\\{a}");
  CHECK(pretty(parse("a.0 + (b.0 + c.0)")) == "a.0 + (b.0 + c.0)");
  CHECK(pretty(parse("a.0 + b.0 + c.0")) == "a.0 + b.0 + c.0");
  CHECK(pretty(parse("(a.0 + b.0) | c.0")) == "(a.0 + b.0) | c.0");
  CHECK(pretty(parse("x!<a>", Calculus::Pi)) == "x!<a>");
  CHECK(pretty(nil()) == "0");
}

TEST_CASE("comments and whitespace") {
  CHECK(parse("a.0 # trailing\n + b.0") == parse("a.0 + b.0"));
}

TEST_CASE("syntax diagnostics carry spans") {
  const CalculusProfile ccs(Calculus::Ccs);
  const std::string src = "a.";
  const ParseResult r = parse_term(src, ccs);
  CHECK_FALSE(r.ok());
  REQUIRE_FALSE(r.diagnostics.empty());
  CHECK(r.diagnostics[0].span.start <= src.size());
  CHECK(r.diagnostics[0].span.end <= src.size());

  for (const std::string bad : {"(a.0", "a.0 |", "a.0 + + b.0", "x!<a", "\\{a}", "a b", "_tau.0",
                                "[_0]", "tau", "0 0"}) {
    CAPTURE(bad);
    const ParseResult e = parse_term(bad, ccs);
    CHECK_FALSE(e.ok());
    for (const auto& d : e.diagnostics) {
      CHECK(d.span.start <= d.span.end);
      CHECK(d.span.end <= bad.size());
      CHECK_FALSE(d.message.empty());
    }
  }
  CHECK_THROWS_AS(parse_syntax("(a.0"), ParseError);
}

TEST_CASE("profile diagnostics point at the construct") {
  const std::string src = "a.0 | theta(b.0)";
  const ParseResult r = parse_term(src, CalculusProfile(Calculus::Ccs));
  REQUIRE_FALSE(r.diagnostics.empty());
  CHECK(src.substr(r.diagnostics[0].span.start, 5) == "theta");
  CHECK_THROWS_AS(parse_or_throw(src, CalculusProfile(Calculus::Ccs)), ParseError);
}

TEST_CASE("label printing") {
  const CalculusProfile pi(Calculus::Pi);
  const StepSet s = transitions(parse("(new z)a!<z>", pi), pi);
  REQUIRE(s.steps.size() == 1);
  CHECK(to_string(s.steps[0].label, Calculus::Pi) == "(new v#0)a!<v#0>");
  CHECK(to_string(Label{label::Tau{}}) == "tau");
  CHECK(to_string(Label{label::Tau{Level::Prioritized, {}}}) == "_tau");
  CHECK(to_string(Label{label::Tau{}}, Calculus::Cpg) == "{}:tau");
  CHECK(to_string(Label{label::Act{Name("c"), Polarity::Out, Level::Ordinary, {}}}, Calculus::Cpg) ==
        "{}:'c");
  CHECK(to_string(Label{label::Kill{KillerLabel{"k"}}}) == "kill(k)");
}

TEST_CASE("label patterns") {
  const LabelPattern a = parse_label_pattern("a");
  CHECK(a.matches(Label{label::Act{Name("a"), Polarity::In, Level::Ordinary, {}}}));
  CHECK_FALSE(a.matches(Label{label::Act{Name("a"), Polarity::Out, Level::Ordinary, {}}}));
  CHECK(parse_label_pattern("'_b").matches(
      Label{label::Act{Name("b"), Polarity::Out, Level::Prioritized, {}}}));

  const LabelPattern any = parse_label_pattern("y!<*>");
  CHECK(any.matches(Label{label::Out{names({"y"}), names({"c"}), {}}}));
  const LabelPattern yc = parse_label_pattern("'y<c>");
  CHECK(yc.matches(Label{label::Out{names({"y"}), names({"c"}), {}}}));
  CHECK_FALSE(yc.matches(Label{label::Out{names({"y"}), names({"d"}), {}}}));
  CHECK(parse_label_pattern("x?<b>").matches(Label{label::In{names({"x"}), names({"b"})}}));
  CHECK_THROWS(parse_label_pattern("tau"));
  CHECK_THROWS(parse_label_pattern(""));
}
