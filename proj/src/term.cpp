#include "procalc/term.hpp"

#include <stdexcept>

namespace procalc {

std::string to_string(const Name& n) {
  if (!n.fresh) return n.text;
  return n.text + "#" + std::to_string(*n.fresh);
}

namespace {

const std::shared_ptr<const Node>& nil_node() {
  static const auto instance = std::make_shared<const Node>(Node{node::Nil{}});
  return instance;
}

Term make(auto&& payload) {
  return Term(std::make_shared<const Node>(Node{std::forward<decltype(payload)>(payload)}));
}

std::strong_ordering cmp(const Term& a, const Term& b);

std::strong_ordering cmp_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (auto c = cmp(a[i], b[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

struct NodeCompare {
  const Node& rhs;

  std::strong_ordering operator()(const node::Nil&) const { return std::strong_ordering::equal; }
  std::strong_ordering operator()(const node::Prefix& x) const {
    const auto& y = std::get<node::Prefix>(rhs.v);
    if (auto c = x.action <=> y.action; c != 0) return c;
    return cmp(x.cont, y.cont);
  }
  std::strong_ordering operator()(const node::Sum& x) const {
    return cmp_terms(x.branches, std::get<node::Sum>(rhs.v).branches);
  }
  std::strong_ordering operator()(const node::Par& x) const {
    const auto& y = std::get<node::Par>(rhs.v);
    if (auto c = cmp(x.left, y.left); c != 0) return c;
    return cmp(x.right, y.right);
  }
  std::strong_ordering operator()(const node::Nu& x) const {
    const auto& y = std::get<node::Nu>(rhs.v);
    if (auto c = x.name <=> y.name; c != 0) return c;
    return cmp(x.body, y.body);
  }
  std::strong_ordering operator()(const node::RestrictSet& x) const {
    const auto& y = std::get<node::RestrictSet>(rhs.v);
    if (auto c = x.labels <=> y.labels; c != 0) return c;
    return cmp(x.body, y.body);
  }
  std::strong_ordering operator()(const node::Bang& x) const {
    const auto& y = std::get<node::Bang>(rhs.v);
    if (auto c = x.unfolded <=> y.unfolded; c != 0) return c;
    return cmp(x.body, y.body);
  }
  std::strong_ordering operator()(const node::Match& x) const {
    const auto& y = std::get<node::Match>(rhs.v);
    if (auto c = x.lhs <=> y.lhs; c != 0) return c;
    if (auto c = x.rhs <=> y.rhs; c != 0) return c;
    return cmp(x.cont, y.cont);
  }
  std::strong_ordering operator()(const node::Relabel& x) const {
    const auto& y = std::get<node::Relabel>(rhs.v);
    if (auto c = x.map <=> y.map; c != 0) return c;
    return cmp(x.body, y.body);
  }
  std::strong_ordering operator()(const node::DefCall& x) const {
    const auto& y = std::get<node::DefCall>(rhs.v);
    if (auto c = x.name <=> y.name; c != 0) return c;
    return x.args <=> y.args;
  }
  std::strong_ordering operator()(const node::Theta& x) const {
    return cmp(x.body, std::get<node::Theta>(rhs.v).body);
  }
  std::strong_ordering operator()(const node::Prioritize& x) const {
    const auto& y = std::get<node::Prioritize>(rhs.v);
    if (auto c = x.action <=> y.action; c != 0) return c;
    return cmp(x.body, y.body);
  }
  std::strong_ordering operator()(const node::Deprioritize& x) const {
    const auto& y = std::get<node::Deprioritize>(rhs.v);
    if (auto c = x.action <=> y.action; c != 0) return c;
    return cmp(x.body, y.body);
  }
  std::strong_ordering operator()(const node::Kill& x) const {
    return x.label <=> std::get<node::Kill>(rhs.v).label;
  }
  std::strong_ordering operator()(const node::Delimit& x) const {
    const auto& y = std::get<node::Delimit>(rhs.v);
    if (auto c = x.label <=> y.label; c != 0) return c;
    return cmp(x.body, y.body);
  }
  std::strong_ordering operator()(const node::Hole& x) const {
    return x.index <=> std::get<node::Hole>(rhs.v).index;
  }
};

std::strong_ordering cmp(const Term& a, const Term& b) {
  if (a.get() == b.get()) return std::strong_ordering::equal;
  if (auto c = a.node().v.index() <=> b.node().v.index(); c != 0) return c;
  return std::visit(NodeCompare{b.node()}, a.node().v);
}

} // namespace

Term::Term() : node_(nil_node()) {}

bool operator==(const Term& a, const Term& b) { return cmp(a, b) == 0; }
std::strong_ordering operator<=>(const Term& a, const Term& b) { return cmp(a, b); }

Term nil() { return Term(); }
Term prefix(PrefixAction action, Term cont) {
  return make(node::Prefix{std::move(action), std::move(cont)});
}
Term tau(Term cont) { return prefix(act::Tau{}, std::move(cont)); }
Term action(const Name& name, Polarity polarity, Term cont, Level level, GuardSet guard) {
  return prefix(act::Ccs{name, polarity, level, std::move(guard)}, std::move(cont));
}
Term pi_out(Tuple subject, Tuple payload, Term cont) {
  return prefix(act::PiOut{std::move(subject), std::move(payload)}, std::move(cont));
}
Term pi_in(Tuple subject, Pattern pattern, Term cont) {
  return prefix(act::PiIn{std::move(subject), std::move(pattern)}, std::move(cont));
}
Term sum(std::vector<Term> branches) {
  if (branches.size() < 2) throw std::invalid_argument("sum needs at least two branches");
  return make(node::Sum{std::move(branches)});
}
Term choice(Term a, Term b) { return sum({std::move(a), std::move(b)}); }
Term par(Term left, Term right) { return make(node::Par{std::move(left), std::move(right)}); }
Term nu(const Name& name, Term body) { return make(node::Nu{name, std::move(body)}); }
Term restrict(std::set<LevelledName> labels, Term body) {
  return make(node::RestrictSet{std::move(labels), std::move(body)});
}
Term bang(Term body, unsigned unfolded) { return make(node::Bang{std::move(body), unfolded}); }
Term match(const Name& lhs, const Name& rhs, Term cont) {
  return make(node::Match{lhs, rhs, std::move(cont)});
}
Term relabel(Term body, std::map<Name, Name> map) {
  return make(node::Relabel{std::move(body), std::move(map)});
}
Term call(std::string name, std::vector<Name> args) {
  return make(node::DefCall{std::move(name), std::move(args)});
}
Term theta(Term body) { return make(node::Theta{std::move(body)}); }
Term prioritize(Term body, const Name& action) {
  return make(node::Prioritize{std::move(body), action});
}
Term deprioritize(Term body, const Name& action) {
  return make(node::Deprioritize{std::move(body), action});
}
Term kill(KillerLabel label) { return make(node::Kill{std::move(label)}); }
Term delimit(KillerLabel label, Term body) {
  return make(node::Delimit{std::move(label), std::move(body)});
}
Term hole(unsigned index) {
  if (index < 1) throw std::invalid_argument("hole indices start at 1");
  return make(node::Hole{index});
}

Tuple names(std::initializer_list<const char*> texts) {
  Tuple out;
  for (const char* t : texts) out.emplace_back(t);
  return out;
}

Pattern placeholders(std::initializer_list<const char*> texts) {
  Pattern out;
  for (const char* t : texts) out.push_back(PatternItem{Name(t), false});
  return out;
}

} // namespace procalc
