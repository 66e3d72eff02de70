#include "procalc/profile.hpp"

#include <array>

#include "procalc/error.hpp"
#include "procalc/term_ops.hpp"

namespace procalc {

namespace {

template <class... Ts> struct Overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::array<std::pair<Calculus, std::string_view>, 8> kNames{{
    {Calculus::Ccs, "ccs"},
    {Calculus::Pi, "pi"},
    {Calculus::PiMpm, "pimpm"},
    {Calculus::BccspTheta, "bccsp-theta"},
    {Calculus::Cpg, "cpg"},
    {Calculus::CcsSg, "ccs-sg"},
    {Calculus::CcsPrio, "ccs-prio"},
    {Calculus::Cows, "cows"},
}};

bool is_ccs_family(Calculus c) {
  return c == Calculus::Ccs || c == Calculus::Cpg || c == Calculus::CcsSg ||
         c == Calculus::CcsPrio;
}

bool has_levels(Calculus c) { return c == Calculus::CcsSg || c == Calculus::CcsPrio; }

class Validator {
public:
  explicit Validator(const CalculusProfile& p) : p_(p), c_(p.calculus) {}

  std::vector<Violation> out;

  void check(const Term& t, const std::string& path) {
    std::visit(
        Overloaded{
            [](const node::Nil&) {},
            [](const node::Hole&) {},
            [&](const node::Prefix& x) {
              check_action(x, t, path);
              check(x.cont, path + "/0");
            },
            [&](const node::Sum& x) {
              if (c_ == Calculus::Cows) fail(t, path, "choice is not part of the COWS fragment");
              for (std::size_t i = 0; i < x.branches.size(); ++i)
                check(x.branches[i], path + "/" + std::to_string(i));
            },
            [&](const node::Par& x) {
              if (c_ == Calculus::BccspTheta)
                fail(t, path, "parallel composition is not part of BCCSP");
              check(x.left, path + "/0");
              check(x.right, path + "/1");
            },
            [&](const node::Nu& x) {
              if (c_ != Calculus::Pi && c_ != Calculus::PiMpm)
                fail(t, path, "name restriction (new) requires a pi profile");
              check(x.body, path + "/0");
            },
            [&](const node::RestrictSet& x) {
              if (!is_ccs_family(c_)) fail(t, path, "CCS restriction is not admitted here");
              for (const auto& l : x.labels)
                if (l.level == Level::Prioritized && !has_levels(c_))
                  fail(t, path, "prioritized restriction label requires ccs-sg or ccs-prio");
              check(x.body, path + "/0");
            },
            [&](const node::Bang& x) {
              if (c_ != Calculus::Pi && c_ != Calculus::PiMpm)
                fail(t, path, "replication requires a pi profile");
              check(x.body, path + "/0");
            },
            [&](const node::Match& x) {
              if (c_ != Calculus::Pi && c_ != Calculus::PiMpm)
                fail(t, path, "match requires a pi profile");
              check(x.cont, path + "/0");
            },
            [&](const node::Relabel& x) {
              if (!is_ccs_family(c_)) fail(t, path, "relabelling is not admitted here");
              check(x.body, path + "/0");
            },
            [&](const node::DefCall& x) {
              if (!admits_definitions(c_)) {
                fail(t, path, "definition calls are not admitted here");
                return;
              }
              const Definition* d = p_.defs.find(x.name);
              if (!d)
                fail(t, path, "undefined process identifier '" + x.name + "'");
              else if (d->params.size() != x.args.size())
                fail(t, path, "arity mismatch in call to '" + x.name + "'");
            },
            [&](const node::Theta& x) {
              if (c_ != Calculus::BccspTheta) fail(t, path, "theta requires bccsp-theta");
              check(x.body, path + "/0");
            },
            [&](const node::Prioritize& x) {
              if (c_ != Calculus::CcsPrio) fail(t, path, "up(...) requires ccs-prio");
              check(x.body, path + "/0");
            },
            [&](const node::Deprioritize& x) {
              if (c_ != Calculus::CcsPrio) fail(t, path, "down(...) requires ccs-prio");
              check(x.body, path + "/0");
            },
            [&](const node::Kill&) {
              if (c_ != Calculus::Cows) fail(t, path, "kill requires cows");
            },
            [&](const node::Delimit& x) {
              if (c_ != Calculus::Cows) fail(t, path, "killer-label delimitation requires cows");
              check(x.body, path + "/0");
            },
        },
        t.node().v);
  }

private:
  void fail(const Term& t, const std::string& path, std::string msg) {
    out.push_back(Violation{path.empty() ? "/" : path, std::move(msg), t.get()});
  }

  void check_action(const node::Prefix& x, const Term& t, const std::string& path) {
    std::visit(
        Overloaded{
            [&](const act::Tau& a) {
              if (c_ == Calculus::Cows) fail(t, path, "tau prefix is not part of the COWS fragment");
              if (!a.guard.empty() && c_ != Calculus::Cpg)
                fail(t, path, "priority guards require cpg");
            },
            [&](const act::Ccs& a) {
              const bool ok = is_ccs_family(c_) || c_ == Calculus::BccspTheta;
              if (!ok) fail(t, path, "CCS-style action is not admitted here");
              if (a.level == Level::Prioritized && !has_levels(c_))
                fail(t, path, "prioritized action requires ccs-sg or ccs-prio");
              if (!a.guard.empty() && c_ != Calculus::Cpg)
                fail(t, path, "priority guards require cpg");
            },
            [&](const act::PiOut& a) {
              if (!is_name_passing(c_)) {
                fail(t, path, "pi output is not admitted here");
                return;
              }
              if (c_ == Calculus::Pi && a.subject.size() != 1)
                fail(t, path, "polyadic subject requires pimpm");
              if (c_ == Calculus::Pi && a.payload.size() != 1)
                fail(t, path, "pi admits monadic payloads only");
              if (c_ == Calculus::Cows && !x.cont.is<node::Nil>())
                fail(t, path, "COWS invoke has no continuation");
            },
            [&](const act::PiIn& a) {
              if (!is_name_passing(c_)) {
                fail(t, path, "pi input is not admitted here");
                return;
              }
              bool has_protected = false;
              std::set<Name> seen;
              for (const auto& item : a.pattern) {
                if (item.is_protected) {
                  has_protected = true;
                } else if (!seen.insert(item.name).second) {
                  fail(t, path, "pattern placeholders must be distinct");
                }
              }
              if (c_ == Calculus::Pi) {
                if (a.subject.size() != 1) fail(t, path, "polyadic subject requires pimpm");
                if (a.pattern.size() != 1) fail(t, path, "pi admits monadic inputs only");
              }
              if (has_protected && c_ != Calculus::PiMpm)
                fail(t, path, "protected pattern names require pimpm");
            },
        },
        x.action);
  }

  const CalculusProfile& p_;
  Calculus c_;
};

} // namespace

std::string_view to_string(Calculus c) {
  for (const auto& [k, name] : kNames)
    if (k == c) return name;
  return "?";
}

std::optional<Calculus> calculus_from_string(std::string_view s) {
  for (const auto& [k, name] : kNames)
    if (name == s) return k;
  return std::nullopt;
}

const std::vector<Calculus>& all_calculi() {
  static const std::vector<Calculus> all = [] {
    std::vector<Calculus> v;
    for (const auto& [k, name] : kNames) v.push_back(k);
    return v;
  }();
  return all;
}

PriorityOrder::PriorityOrder(std::set<std::pair<std::string, std::string>> pairs)
    : pairs_(std::move(pairs)) {
  for (const auto& [lo, hi] : pairs_) {
    if (lo == hi) throw SemanticError("priority order is not irreflexive: " + lo + " < " + lo);
    for (const auto& [lo2, hi2] : pairs_) {
      if (lo2 != hi) continue;
      if (!pairs_.count({lo, hi2}))
        throw SemanticError("priority order is not transitive: " + lo + " < " + hi + " < " +
                            hi2 + " but not " + lo + " < " + hi2);
    }
  }
}

void DefinitionEnv::define(const std::string& name, Definition def) {
  NameSet params(def.params.begin(), def.params.end());
  if (params.size() != def.params.size())
    throw SemanticError("definition '" + name + "' repeats a parameter");
  for (const auto& n : free_names(def.body))
    if (!params.count(n))
      throw SemanticError("definition '" + name + "' has free name '" + to_string(n) +
                          "' that is not a parameter");
  defs_[name] = std::move(def);
}

const Definition* DefinitionEnv::find(const std::string& name) const {
  auto it = defs_.find(name);
  return it == defs_.end() ? nullptr : &it->second;
}

bool admits_definitions(Calculus c) { return is_ccs_family(c); }

bool is_name_passing(Calculus c) {
  return c == Calculus::Pi || c == Calculus::PiMpm || c == Calculus::Cows;
}

std::vector<Violation> validate_profile(const Term& t, const CalculusProfile& p) {
  Validator v(p);
  v.check(t, "");
  return std::move(v.out);
}

void require_profile(const Term& t, const CalculusProfile& p) {
  auto violations = validate_profile(t, p);
  if (!violations.empty())
    throw ProfileError(std::string(to_string(p.calculus)) + ": " + violations.front().message +
                       " (at " + violations.front().path + ")");
}

} // namespace procalc
