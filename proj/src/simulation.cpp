#include "procalc/simulation.hpp"

#include <bit>
#include <deque>
#include <json.hpp>
#include <map>

#include "procalc/error.hpp"

namespace procalc {

PairSet::PairSet(std::size_t rows, std::size_t cols, bool full)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {
  if (!full) return;
  for (std::size_t q = 0; q < rows; ++q)
    for (std::size_t p = 0; p < cols; ++p) set(q, p, true);
}

void PairSet::set(std::size_t q, std::size_t p, bool on) {
  auto& w = bits_[q * words_ + p / 64];
  const std::uint64_t mask = std::uint64_t{1} << (p % 64);
  w = on ? (w | mask) : (w & ~mask);
}

std::size_t PairSet::count() const {
  std::size_t n = 0;
  for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool PairSet::subset_of(const PairSet& o) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> PairSet::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t q = 0; q < rows_; ++q)
    for (std::size_t p = 0; p < cols_; ++p)
      if (contains(q, p)) out.emplace_back(q, p);
  return out;
}

namespace {

void require_complete(const Lts& l, const char* which) {
  if (!l.complete)
    throw IncompleteLtsError(std::string(which) + " state space incomplete (bound " +
                             (l.cut_reason.empty() ? "unknown" : l.cut_reason) + ")");
}

/// Weak answers of P: for every p, the states reachable by ==> (tau moves)
/// or ==mu==> for each visible label that Q can perform.
class Answers {
public:
  Answers(const Lts& lq, const Lts& lp) : lp_(lp) {
    require_complete(lq, "left");
    require_complete(lp, "right");
    const std::size_t np = lp.size();
    closure_ = PairSet(np, np, false);
    for (std::size_t p = 0; p < np; ++p)
      for (std::size_t r : weak_reach(lp, p)) closure_.set(p, r, true);

    moves_.resize(lq.size());
    for (const auto& e : lq.edges) {
      int id = -1;
      if (is_visible(e.label)) id = intern(e.label);
      moves_[e.src].push_back({id, e.dst});
    }
  }

  struct Move {
    int label;  // -1 for invisible
    std::size_t dst;
  };

  const std::vector<Move>& moves(std::size_t q) const { return moves_[q]; }
  const PairSet& answers(int label) const { return label < 0 ? closure_ : weak_[label]; }

  /// Does p answer q's move into q' within relation r?
  bool answered(const Move& m, std::size_t p, const PairSet& r) const {
    const PairSet& w = answers(m.label);
    const std::uint64_t* a = w.row(p);
    const std::uint64_t* b = r.row(m.dst);
    for (std::size_t i = 0; i < w.words(); ++i)
      if (a[i] & b[i]) return true;
    return false;
  }

  bool transfers(std::size_t q, std::size_t p, const PairSet& r) const {
    for (const auto& m : moves_[q])
      if (!answered(m, p, r)) return false;
    return true;
  }

private:
  int intern(const Label& l) {
    auto [it, inserted] = ids_.emplace(l, static_cast<int>(weak_.size()));
    if (inserted) weak_.push_back(weak_for(l));
    return it->second;
  }

  PairSet weak_for(const Label& l) const {
    const std::size_t np = lp_.size();
    // Strong mu-successors closed under tau on the right.
    PairSet after(np, np, false);
    for (const auto& e : lp_.edges) {
      if (e.label != l) continue;
      for (std::size_t r = 0; r < np; ++r)
        if (closure_.contains(e.dst, r)) after.set(e.src, r, true);
    }
    PairSet out(np, np, false);
    for (std::size_t p = 0; p < np; ++p)
      for (std::size_t mid = 0; mid < np; ++mid) {
        if (!closure_.contains(p, mid)) continue;
        for (std::size_t r = 0; r < np; ++r)
          if (after.contains(mid, r)) out.set(p, r, true);
      }
    return out;
  }

  const Lts& lp_;
  PairSet closure_;
  std::map<Label, int> ids_;
  std::vector<PairSet> weak_;
  std::vector<std::vector<Move>> moves_;
};

PairSet refine(const Answers& a, const PairSet& prev) {
  PairSet next(prev.rows(), prev.cols(), false);
  for (std::size_t q = 0; q < prev.rows(); ++q)
    for (std::size_t p = 0; p < prev.cols(); ++p)
      if (prev.contains(q, p) && a.transfers(q, p, prev)) next.set(q, p, true);
  return next;
}

} // namespace

SimRelation sim_k(const Lts& lq, const Lts& lp, std::size_t k) {
  Answers a(lq, lp);
  PairSet r(lq.size(), lp.size(), true);
  for (std::size_t i = 0; i < k; ++i) {
    PairSet next = refine(a, r);
    if (next == r) break;  // later strata are all equal
    r = std::move(next);
  }
  return SimRelation{std::move(r), k, 0};
}

SimRelation sim_omega(const Lts& lq, const Lts& lp) {
  Answers a(lq, lp);
  PairSet r(lq.size(), lp.size(), true);
  std::size_t k = 0;
  while (true) {
    PairSet next = refine(a, r);
    if (next == r) break;
    r = std::move(next);
    ++k;
  }
  return SimRelation{std::move(r), std::nullopt, k};
}

SimRelation weak_simulation_gfp(const Lts& lq, const Lts& lp) {
  Answers a(lq, lp);
  const std::size_t nq = lq.size(), np = lp.size();
  std::vector<std::vector<std::size_t>> preds(nq);
  for (const auto& e : lq.edges) preds[e.dst].push_back(e.src);

  PairSet r(nq, np, true);
  std::deque<std::pair<std::size_t, std::size_t>> work;
  for (std::size_t q = 0; q < nq; ++q)
    for (std::size_t p = 0; p < np; ++p) work.emplace_back(q, p);
  while (!work.empty()) {
    auto [q, p] = work.front();
    work.pop_front();
    if (!r.contains(q, p) || a.transfers(q, p, r)) continue;
    r.set(q, p, false);
    for (std::size_t q0 : preds[q])
      for (std::size_t p0 = 0; p0 < np; ++p0)
        if (r.contains(q0, p0)) work.emplace_back(q0, p0);
  }
  return SimRelation{std::move(r), std::nullopt, 0};
}

bool is_weak_simulation(const Lts& lq, const Lts& lp, const PairSet& r) {
  Answers a(lq, lp);
  for (const auto& [q, p] : r.pairs())
    if (!a.transfers(q, p, r)) return false;
  return true;
}

std::optional<std::size_t> distinguishing_depth(const Lts& lq, const Lts& lp) {
  Answers a(lq, lp);
  PairSet r(lq.size(), lp.size(), true);
  for (std::size_t k = 1;; ++k) {
    PairSet next = refine(a, r);
    if (!next.contains(lq.root, lp.root)) return k;
    if (next == r) return std::nullopt;
    r = std::move(next);
  }
}

std::optional<DistinguishingMove> distinguishing_move(const Lts& lq, const Lts& lp) {
  Answers a(lq, lp);
  PairSet r(lq.size(), lp.size(), true);
  for (std::size_t k = 1;; ++k) {
    PairSet next = refine(a, r);
    if (!next.contains(lq.root, lp.root)) {
      // moves() lists a state's edges in outgoing() order.
      const auto& out = lq.outgoing(lq.root);
      const auto& moves = a.moves(lq.root);
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (a.answered(moves[i], lp.root, r)) continue;
        const Edge& edge = lq.edges[out[i]];
        return DistinguishingMove{k, edge.label, edge.src, edge.dst};
      }
      return std::nullopt;
    }
    if (next == r) return std::nullopt;
    r = std::move(next);
  }
}

std::string to_json(const SimRelation& r, int indent) {
  nlohmann::json j;
  if (r.k)
    j["k"] = *r.k;
  else {
    j["k"] = "omega";
    j["converged_at"] = r.converged_at;
  }
  auto& pairs = j["pairs"] = nlohmann::json::array();
  for (const auto& [q, p] : r.pairs.pairs()) pairs.push_back({q, p});
  return j.dump(indent);
}

} // namespace procalc
