#include "procalc/lts.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "procalc/error.hpp"
#include "sos_internal.hpp"

namespace procalc {

void Lts::index() {
  out_.assign(states.size(), {});
  for (std::size_t i = 0; i < edges.size(); ++i) out_[edges[i].src].push_back(i);
}

Lts Lts::from_edges(std::size_t n, std::size_t root, std::vector<Edge> edges) {
  Lts l;
  l.states.resize(n);
  for (auto& s : l.states) s.expanded = true;
  l.root = root;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  l.edges = std::move(edges);
  l.complete = true;
  l.index();
  return l;
}

namespace {

struct StateKey {
  Term term;
  NameSet known;
  auto operator<=>(const StateKey&) const = default;
  bool operator==(const StateKey&) const = default;
};

NameSet known_after(const NameSet& k, const Label& l) {
  if (!is_visible(l)) return k;
  NameSet out = k;
  for (const auto& n : label_names(l)) out.insert(n);
  return out;
}

} // namespace

Lts explore(const Term& t, const CalculusProfile& p, const ExplorationBounds& b,
            const NameSet& extra_names) {
  if (!is_process(t)) throw ContextError("context not a process");
  require_profile(t, p);
  if (b.max_states < 1 || b.max_depth < 1 || b.max_bang_unfold < 1)
    throw SemanticError("exploration bounds must be at least 1");

  const bool passing = is_name_passing(p.calculus);
  Lts l;
  l.calculus = p.calculus;
  l.bounds = b;

  std::map<StateKey, std::size_t> seen;
  auto note_cut = [&](const char* why) {
    if (l.cut_reason.empty()) l.cut_reason = why;
  };

  StateKey root{alpha_canonical(t), {}};
  if (passing) {
    root.known = free_names(t);
    root.known.insert(extra_names.begin(), extra_names.end());
  }
  seen.emplace(root, 0);
  l.states.push_back({root.term, root.known, false, 0});

  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const std::size_t s = frontier.front();
    frontier.pop_front();
    const Term term = l.states[s].term;
    const NameSet known = l.states[s].known;
    const std::size_t depth = l.states[s].depth;

    SosOptions opts;
    opts.known_names = known;
    opts.max_bang_unfold = b.max_bang_unfold;
    StepSet steps = detail::dispatch(term, p, opts);

    if (depth >= b.max_depth) {
      // Successors would lie beyond the horizon; a stuck state is still
      // fully known.
      if (steps.steps.empty() && !steps.truncated) {
        l.states[s].expanded = true;
      } else {
        note_cut(steps.steps.empty() ? "max_bang_unfold" : "max_depth");
      }
      continue;
    }

    bool expanded = !steps.truncated;
    if (steps.truncated) note_cut("max_bang_unfold");
    for (auto& step : steps.steps) {
      StateKey key{step.target, passing ? known_after(known, step.label) : NameSet{}};
      auto it = seen.find(key);
      std::size_t dst;
      if (it != seen.end()) {
        dst = it->second;
      } else {
        if (l.states.size() >= b.max_states) {
          expanded = false;
          note_cut("max_states");
          continue;
        }
        dst = l.states.size();
        l.states.push_back({key.term, key.known, false, depth + 1});
        seen.emplace(std::move(key), dst);
        frontier.push_back(dst);
      }
      l.edges.push_back({s, std::move(step.label), dst});
    }
    l.states[s].expanded = expanded;
  }

  l.complete = std::all_of(l.states.begin(), l.states.end(),
                           [](const Lts::State& st) { return st.expanded; });
  if (l.complete) l.cut_reason.clear();
  l.index();
  return l;
}

std::pair<Lts, Lts> explore_pair(const Term& q, const Term& p, const CalculusProfile& prof,
                                 const ExplorationBounds& b) {
  NameSet shared;
  if (is_name_passing(prof.calculus)) {
    if (!is_process(q) || !is_process(p)) throw ContextError("context not a process");
    shared = free_names(q);
    auto fp = free_names(p);
    shared.insert(fp.begin(), fp.end());
  }
  return {explore(q, prof, b, shared), explore(p, prof, b, shared)};
}

Verdict Verdict::negate(const Verdict& v) {
  Verdict out;
  switch (v.kind) {
  case Kind::Holds:
    out.kind = Kind::Fails;
    break;
  case Kind::Fails:
    out.kind = Kind::Holds;
    break;
  case Kind::Unknown:
    out = v;
    out.trace.clear();
    break;
  }
  return out;
}

std::string_view to_string(Verdict::Kind k) {
  switch (k) {
  case Verdict::Kind::Holds:
    return "holds";
  case Verdict::Kind::Fails:
    return "fails";
  case Verdict::Kind::Unknown:
    return "unknown";
  }
  return "unknown";
}

std::vector<std::size_t> weak_reach(const Lts& l, std::size_t s) {
  std::vector<bool> seen(l.size(), false);
  std::vector<std::size_t> order{s};
  seen[s] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t e : l.outgoing(order[i])) {
      const Edge& edge = l.edges[e];
      if (is_visible(edge.label) || seen[edge.dst]) continue;
      seen[edge.dst] = true;
      order.push_back(edge.dst);
    }
  }
  return order;
}

namespace {

template <class Pred> Verdict search(const Lts& l, std::size_t s, Pred&& wanted) {
  // Breadth-first over invisible edges, so the witness has the fewest taus.
  std::vector<std::optional<std::size_t>> via(l.size());
  std::vector<bool> seen(l.size(), false);
  std::vector<std::size_t> order{s};
  seen[s] = true;
  auto trace_to = [&](std::size_t state, std::size_t last_edge) {
    std::vector<Step> rev{{l.edges[last_edge].label, l.states[l.edges[last_edge].dst].term}};
    for (std::size_t cur = state; via[cur];) {
      const Edge& e = l.edges[*via[cur]];
      rev.push_back({e.label, l.states[cur].term});
      cur = e.src;
    }
    return std::vector<Step>(rev.rbegin(), rev.rend());
  };
  bool all_expanded = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t cur = order[i];
    all_expanded = all_expanded && l.states[cur].expanded;
    for (std::size_t e : l.outgoing(cur)) {
      const Edge& edge = l.edges[e];
      if (is_visible(edge.label)) {
        if (wanted(edge.label)) return Verdict{Verdict::Kind::Holds, trace_to(cur, e), {}};
        continue;
      }
      if (seen[edge.dst]) continue;
      seen[edge.dst] = true;
      via[edge.dst] = e;
      order.push_back(edge.dst);
    }
  }
  if (all_expanded) return Verdict{Verdict::Kind::Fails, {}, {}};
  return Verdict{Verdict::Kind::Unknown, {}, l.cut_reason.empty() ? "bounds" : l.cut_reason};
}

} // namespace

Verdict can_perform(const Lts& l, std::size_t s, const LabelPattern& alpha) {
  return search(l, s, [&](const Label& lab) { return alpha.matches(lab); });
}

Verdict is_visible(const Lts& l, std::size_t s) {
  return search(l, s, [](const Label&) { return true; });
}

Verdict is_invisible(const Lts& l, std::size_t s) { return Verdict::negate(is_visible(l, s)); }

Verdict can_perform(const Term& t, const CalculusProfile& p, const ExplorationBounds& b,
                    const LabelPattern& alpha) {
  Lts l = explore(t, p, b);
  return can_perform(l, l.root, alpha);
}

Verdict is_visible(const Term& t, const CalculusProfile& p, const ExplorationBounds& b) {
  Lts l = explore(t, p, b);
  return is_visible(l, l.root);
}

Verdict is_invisible(const Term& t, const CalculusProfile& p, const ExplorationBounds& b) {
  return Verdict::negate(is_visible(t, p, b));
}

} // namespace procalc
