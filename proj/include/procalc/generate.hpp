#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "procalc/profile.hpp"
#include "procalc/term.hpp"

namespace procalc {

struct GenConfig {
  Calculus calculus = Calculus::Ccs;
  int depth = 3;
  std::vector<std::string> names{"a", "b", "c"};
  bool allow_par = true;
  bool allow_match = true;   // pi profiles
  bool use_definitions = false;  // CCS family; see sample_definitions()
};

/// Small recursive environment: every body is sequential, so processes built
/// from these calls are finite-control.
///   Loop<>     := tau.Loop<>
///   Cycle<a,b> := a.'b.Cycle<a,b>
///   Ping<a>    := a.Ping<a> + tau.0
DefinitionEnv sample_definitions();

/// Random terms admitted by the configured calculus. Deterministic in the
/// seed.
class Generator {
public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  Term process(const GenConfig& cfg);
  /// A context with exactly one hole `[_1]`.
  Term context(const GenConfig& cfg);
  /// A term whose every free name is hidden, hence invisible; closed for the
  /// name-passing calculi. Callers still certify it with is_invisible.
  Term hidden(const GenConfig& cfg);
  /// A term likely (not guaranteed) to be invisible while keeping free names
  /// in payload positions; pi profiles only.
  Term hidden_open(const GenConfig& cfg);

  std::mt19937_64& rng() { return rng_; }

private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Term gen(const GenConfig& cfg, int depth, std::vector<Name>& scope);
  Term gen_ccs(const GenConfig& cfg, int depth);
  Term gen_ccs_prefix(const GenConfig& cfg, int depth);
  Term gen_pi(const GenConfig& cfg, int depth, std::vector<Name>& scope);
  Term gen_cows(const GenConfig& cfg, int depth, std::vector<Name>& scope);
  Term gen_context(const GenConfig& cfg, int depth, std::vector<Name>& scope);

  Name any_name(const GenConfig& cfg, const std::vector<Name>& scope);
  Tuple tuple(const GenConfig& cfg, const std::vector<Name>& scope, int max_len);

  std::mt19937_64 rng_;
  unsigned next_binder_ = 0;
};

} // namespace procalc
