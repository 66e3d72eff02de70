#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "procalc/lts.hpp"
#include "procalc/simulation.hpp"
#include "procalc/sos.hpp"
#include "procalc/surface.hpp"
#include "procalc/term_ops.hpp"

namespace procalc::testing {

inline Term parse(const std::string& src, Calculus c = Calculus::Ccs) {
  return parse_or_throw(src, CalculusProfile(c));
}

inline Term parse(const std::string& src, const CalculusProfile& p) { return parse_or_throw(src, p); }

inline std::vector<std::string> labels_of(const StepSet& s, Calculus c = Calculus::Ccs) {
  std::vector<std::string> out;
  for (const auto& st : s.steps) out.push_back(to_string(st.label, c));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> labels_of(const std::vector<Step>& trace, Calculus c) {
  std::vector<std::string> out;
  for (const auto& st : trace) out.push_back(to_string(st.label, c));
  return out;
}

/// Replays a verdict trace from `t` through transitions(), threading the
/// known-name set the way exploration does.
inline bool replay(const Term& t, const CalculusProfile& p, const ExplorationBounds& b,
                   const std::vector<Step>& trace, NameSet known = {}) {
  Term cur = alpha_canonical(t);
  if (is_name_passing(p.calculus)) {
    auto fn = free_names(t);
    known.insert(fn.begin(), fn.end());
  }
  for (const auto& step : trace) {
    SosOptions opts;
    opts.known_names = known;
    opts.max_bang_unfold = b.max_bang_unfold;
    const StepSet s = transitions(cur, p, opts);
    if (std::find(s.steps.begin(), s.steps.end(), step) == s.steps.end()) return false;
    if (is_name_passing(p.calculus) && is_visible(step.label))
      for (const auto& n : label_names(step.label)) known.insert(n);
    cur = step.target;
  }
  return true;
}

/// Random finite LTS over a few visible actions plus tau. With
/// `tau_cycles` false, tau edges only go forward in state order.
inline Lts random_lts(std::mt19937_64& rng, std::size_t n, double density, bool tau_cycles = true) {
  static const char* acts[] = {"a", "b", "c"};
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<Edge> edges;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t d = 0; d < n; ++d) {
      if (u(rng) >= density) continue;
      const int k = pick(rng);
      if (k == 3) {
        if (tau_cycles || d > s) edges.push_back({s, Label{label::Tau{}}, d});
      } else {
        edges.push_back({s, Label{label::Act{Name(acts[k]), Polarity::In, Level::Ordinary, {}}}, d});
      }
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Lts::from_edges(n, 0, std::move(edges));
}

/// Textbook stratified simulation over explicit pair sets: every move of q
/// must be answered by a weak move of p into the previous stratum. Kept
/// deliberately naive; used to check the bitset implementation.
class NaiveSim {
public:
  NaiveSim(const Lts& q, const Lts& p) : q_(q), p_(p) {}

  std::set<std::pair<std::size_t, std::size_t>> stratum(std::size_t k) const {
    std::set<std::pair<std::size_t, std::size_t>> r;
    for (std::size_t i = 0; i < q_.size(); ++i)
      for (std::size_t j = 0; j < p_.size(); ++j) r.emplace(i, j);
    for (std::size_t step = 0; step < k; ++step) {
      std::set<std::pair<std::size_t, std::size_t>> next;
      for (const auto& [qi, pj] : r) {
        bool ok = true;
        for (const auto& e : q_.edges) {
          if (e.src != qi) continue;
          bool answered = false;
          for (std::size_t target : weak_moves(pj, e.label))
            if (r.count({e.dst, target})) answered = true;
          if (!answered) ok = false;
        }
        if (ok) next.emplace(qi, pj);
      }
      r = std::move(next);
    }
    return r;
  }

private:
  std::set<std::size_t> taus(std::size_t s) const {
    std::set<std::size_t> seen{s};
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      for (const auto& e : p_.edges)
        if (e.src == cur && !is_visible(e.label) && seen.insert(e.dst).second) stack.push_back(e.dst);
    }
    return seen;
  }

  std::set<std::size_t> weak_moves(std::size_t s, const Label& l) const {
    if (!is_visible(l)) return taus(s);
    std::set<std::size_t> out;
    for (std::size_t mid : taus(s))
      for (const auto& e : p_.edges)
        if (e.src == mid && e.label == l)
          for (std::size_t end : taus(e.dst)) out.insert(end);
    return out;
  }

  const Lts& q_;
  const Lts& p_;
};

} // namespace procalc::testing
