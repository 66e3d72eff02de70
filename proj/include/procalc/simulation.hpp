#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "procalc/lts.hpp"

namespace procalc {

/// Dense |Q| x |P| boolean matrix.
class PairSet {
public:
  PairSet() = default;
  PairSet(std::size_t rows, std::size_t cols, bool full);

  bool contains(std::size_t q, std::size_t p) const {
    return (bits_[q * words_ + p / 64] >> (p % 64)) & 1u;
  }
  void set(std::size_t q, std::size_t p, bool on);
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t count() const;
  /// Row q as 64-bit words.
  const std::uint64_t* row(std::size_t q) const { return bits_.data() + q * words_; }
  std::size_t words() const { return words_; }
  bool subset_of(const PairSet& o) const;
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  bool operator==(const PairSet&) const = default;

private:
  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct SimRelation {
  PairSet pairs;
  /// Stratum index; nullopt for the limit.
  std::optional<std::size_t> k;
  /// For the limit: least k with sim_k = sim_{k+1}.
  std::size_t converged_at = 0;

  bool contains(std::size_t q, std::size_t p) const { return pairs.contains(q, p); }
};

/// Stratum k of weak simulation of `lq` by `lp`. Throws IncompleteLtsError.
SimRelation sim_k(const Lts& lq, const Lts& lp, std::size_t k);
/// Limit of the strata.
SimRelation sim_omega(const Lts& lq, const Lts& lp);
/// Greatest weak simulation computed directly by refinement with a worklist;
/// independent of the strata, used as a cross-check.
SimRelation weak_simulation_gfp(const Lts& lq, const Lts& lp);
/// True when `r` satisfies the transfer condition against itself.
bool is_weak_simulation(const Lts& lq, const Lts& lp, const PairSet& r);

/// A move of q no move of p can answer at the given stratum.
struct DistinguishingMove {
  std::size_t depth = 0;
  Label label;
  std::size_t q_from = 0, q_to = 0;
};

/// Least k with (root, root) outside sim_k, or nullopt when the limit keeps
/// the root pair.
std::optional<std::size_t> distinguishing_depth(const Lts& lq, const Lts& lp);
std::optional<DistinguishingMove> distinguishing_move(const Lts& lq, const Lts& lp);

/// {"k": n|"omega", "pairs": [[q,p],...]}
std::string to_json(const SimRelation& r, int indent = 2);

} // namespace procalc
