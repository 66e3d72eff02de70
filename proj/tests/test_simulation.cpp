#include <doctest.h>

#include <json.hpp>

#include "procalc/error.hpp"
#include "support.hpp"

using namespace procalc;
using procalc::testing::NaiveSim;
using procalc::testing::parse;
using procalc::testing::random_lts;

namespace {

std::set<std::pair<std::size_t, std::size_t>> as_set(const SimRelation& r) {
  auto v = r.pairs.pairs();
  return {v.begin(), v.end()};
}

std::pair<Lts, Lts> ccs_pair(const std::string& q, const std::string& p) {
  const CalculusProfile ccs(Calculus::Ccs);
  return explore_pair(parse(q), parse(p), ccs);
}

} // namespace

TEST_CASE("distinguishing depths of small processes") {
  {
    auto [lq, lp] = ccs_pair("a.0", "b.0");
    CHECK(distinguishing_depth(lq, lp) == 1);
    const auto mv = distinguishing_move(lq, lp);
    REQUIRE(mv);
    CHECK(to_string(mv->label) == "a");
    CHECK(mv->q_from == lq.root);
  }
  {
    auto [lq, lp] = ccs_pair("a.a.0", "a.b.0");
    CHECK(distinguishing_depth(lq, lp) == 2);
    CHECK(sim_k(lq, lp, 1).contains(lq.root, lp.root));
    CHECK_FALSE(sim_k(lq, lp, 2).contains(lq.root, lp.root));
  }
  {
    auto [lq, lp] = ccs_pair("tau.a.0", "a.0");
    CHECK(sim_omega(lq, lp).contains(lq.root, lp.root));
    CHECK_FALSE(distinguishing_depth(lq, lp));
  }
  {
    auto [lq, lp] = ccs_pair("a.0", "tau.a.0");
    CHECK(sim_omega(lq, lp).contains(lq.root, lp.root));
  }
  {
    auto [lq, lp] = ccs_pair("0", "a.b.0 | c.0");
    CHECK(sim_omega(lq, lp).contains(lq.root, lp.root));
  }
  {
    auto [lq, lp] = ccs_pair("a.0 + b.0", "a.0");
    CHECK_FALSE(sim_omega(lq, lp).contains(lq.root, lp.root));
  }
}

TEST_CASE("sim_0 is total") {
  auto [lq, lp] = ccs_pair("a.b.0", "c.0");
  CHECK(sim_k(lq, lp, 0).pairs.count() == lq.size() * lp.size());
}

TEST_CASE("bitset strata agree with the naive oracle") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 60; ++i) {
    const Lts q = random_lts(rng, 2 + i % 6, 0.3);
    const Lts p = random_lts(rng, 2 + (i * 7) % 6, 0.3);
    NaiveSim oracle(q, p);
    for (std::size_t k = 0; k < 5; ++k) {
      CAPTURE(i);
      CAPTURE(k);
      CHECK(as_set(sim_k(q, p, k)) == oracle.stratum(k));
    }
    const SimRelation om = sim_omega(q, p);
    CHECK(as_set(om) == oracle.stratum(q.size() * p.size() + 1));
    CHECK(om.pairs == weak_simulation_gfp(q, p).pairs);
    CHECK(is_weak_simulation(q, p, om.pairs));
    CHECK(om.pairs == sim_k(q, p, om.converged_at).pairs);
  }
}

TEST_CASE("weak simulation check rejects non-simulations") {
  auto [lq, lp] = ccs_pair("a.0", "b.0");
  PairSet full(lq.size(), lp.size(), true);
  CHECK_FALSE(is_weak_simulation(lq, lp, full));
  CHECK(is_weak_simulation(lq, lp, PairSet(lq.size(), lp.size(), false)));
}

TEST_CASE("incomplete spaces are refused") {
  const CalculusProfile pi(Calculus::Pi);
  ExplorationBounds b;
  b.max_bang_unfold = 1;
  auto [lq, lp] = explore_pair(parse("!tau.0", pi), nil(), pi, b);
  REQUIRE_FALSE(lq.complete);
  CHECK_THROWS_AS(sim_omega(lq, lp), IncompleteLtsError);
  CHECK_THROWS_AS(weak_simulation_gfp(lq, lp), IncompleteLtsError);
}

TEST_CASE("relation json") {
  auto [lq, lp] = ccs_pair("tau.a.0", "a.0");
  const auto j = nlohmann::json::parse(to_json(sim_omega(lq, lp)));
  CHECK(j.contains("pairs"));
}
