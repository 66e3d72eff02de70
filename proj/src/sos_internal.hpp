#pragma once

#include <vector>

#include "procalc/sos.hpp"

namespace procalc::detail {

template <class... Ts> struct Overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

/// Unfolding chains longer than this are treated as unguarded recursion.
inline constexpr int kMaxUnfoldDepth = 512;

struct CcsFamilyConfig {
  Calculus calculus = Calculus::Ccs;
  const DefinitionEnv* env = nullptr;
  const PriorityOrder* order = nullptr;
};

/// Raw (uncanonicalized) steps for the CCS-family calculi and BCCSP.
std::vector<Step> ccs_family_steps(const Term& t, const CcsFamilyConfig& cfg);

struct NamePassingConfig {
  bool cows = false;
  const SosOptions* opts = nullptr;
};

/// Raw steps for pi, pi-MPM and the COWS fragment, inputs already
/// instantiated over the early universe.
StepSet name_passing_steps(const Term& t, const NamePassingConfig& cfg);

/// transitions() without the profile check; used by exploration, which
/// validates the root once.
StepSet dispatch(const Term& t, const CalculusProfile& p, const SosOptions& opts);

/// Canonicalizes targets, sorts and removes duplicates.
StepSet finish(std::vector<Step> steps, bool truncated);

} // namespace procalc::detail
