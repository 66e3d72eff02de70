#include <algorithm>
#include <cctype>

#include "procalc/error.hpp"
#include "procalc/surface.hpp"
#include "sos_internal.hpp"

namespace procalc {

namespace {

enum Prec { kSum = 0, kPar = 1, kPostfix = 2, kPrefix = 3 };

std::string join(const Tuple& names, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += sep;
    out += to_string(names[i]);
  }
  return out;
}

std::string guard_str(const GuardSet& g) {
  std::string out = "{";
  bool first = true;
  for (const auto& n : g) {
    if (!first) out += ",";
    first = false;
    out += to_string(n);
  }
  return out + "}:";
}

std::string lab_str(const Name& n, Polarity pol, Level lvl) {
  std::string s = pol == Polarity::Out ? "'" : "";
  if (lvl == Level::Prioritized) s += "_";
  return s + to_string(n);
}

std::string action_str(const PrefixAction& a) {
  return std::visit(detail::Overloaded{
                        [](const act::Tau& t) {
                          return (t.guard.empty() ? "" : guard_str(t.guard)) + "tau";
                        },
                        [](const act::Ccs& c) {
                          return (c.guard.empty() ? "" : guard_str(c.guard)) +
                                 lab_str(c.name, c.polarity, c.level);
                        },
                        [](const act::PiOut& o) {
                          return join(o.subject, ":") + "!<" + join(o.payload, ",") + ">";
                        },
                        [](const act::PiIn& i) {
                          std::string s = join(i.subject, ":") + "?(";
                          for (std::size_t k = 0; k < i.pattern.size(); ++k) {
                            if (k) s += ",";
                            if (i.pattern[k].is_protected) s += "@";
                            s += to_string(i.pattern[k].name);
                          }
                          return s + ")";
                        },
                    },
                    a);
}

int prec_of(const Term& t) {
  if (t.is<node::Sum>()) return kSum;
  if (t.is<node::Par>()) return kPar;
  if (t.is<node::RestrictSet>() || t.is<node::Relabel>()) return kPostfix;
  return kPrefix;
}

void print(const Term& t, int min_prec, std::string& out);

void print_at(const Term& t, int min_prec, std::string& out) {
  if (prec_of(t) < min_prec) {
    out += "(";
    print(t, kSum, out);
    out += ")";
  } else {
    print(t, min_prec, out);
  }
}

void print(const Term& t, int, std::string& out) {
  std::visit(
      detail::Overloaded{
          [&](const node::Nil&) { out += "0"; },
          [&](const node::Prefix& p) {
            out += action_str(p.action);
            if (std::holds_alternative<act::PiOut>(p.action) && p.cont.is<node::Nil>()) return;
            out += ".";
            print_at(p.cont, kPrefix, out);
          },
          [&](const node::Sum& s) {
            for (std::size_t i = 0; i < s.branches.size(); ++i) {
              if (i) out += " + ";
              print_at(s.branches[i], kPar, out);
            }
          },
          [&](const node::Par& p) {
            print_at(p.left, kPar, out);
            out += " | ";
            print_at(p.right, kPostfix, out);
          },
          [&](const node::Nu& n) {
            out += "(new " + to_string(n.name);
            const Term* body = &n.body;
            while (const auto* inner = body->as<node::Nu>()) {
              out += " " + to_string(inner->name);
              body = &inner->body;
            }
            out += ")";
            print_at(*body, kPrefix, out);
          },
          [&](const node::RestrictSet& r) {
            print_at(r.body, kPostfix, out);
            out += "\\{";
            bool first = true;
            for (const auto& l : r.labels) {
              if (!first) out += ",";
              first = false;
              out += lab_str(l.name, Polarity::In, l.level);
            }
            out += "}";
          },
          [&](const node::Bang& b) {
            out += "!";
            print_at(b.body, kPrefix, out);
          },
          [&](const node::Match& m) {
            out += "[" + to_string(m.lhs) + "=" + to_string(m.rhs) + "]";
            print_at(m.cont, kPrefix, out);
          },
          [&](const node::Relabel& r) {
            print_at(r.body, kPostfix, out);
            out += "[";
            bool first = true;
            for (const auto& [from, to] : r.map) {
              if (!first) out += ",";
              first = false;
              out += to_string(to) + "/" + to_string(from);
            }
            out += "]";
          },
          [&](const node::DefCall& c) { out += c.name + "<" + join(c.args, ",") + ">"; },
          [&](const node::Theta& th) {
            out += "theta(";
            print(th.body, kSum, out);
            out += ")";
          },
          [&](const node::Prioritize& p) {
            out += "up(";
            print(p.body, kSum, out);
            out += ", " + to_string(p.action) + ")";
          },
          [&](const node::Deprioritize& p) {
            out += "down(";
            print(p.body, kSum, out);
            out += ", " + to_string(p.action) + ")";
          },
          [&](const node::Kill& k) { out += "kill(" + k.label.text + ")"; },
          [&](const node::Delimit& d) {
            out += "[" + d.label.text + "]";
            print_at(d.body, kPrefix, out);
          },
          [&](const node::Hole& h) { out += "[_" + std::to_string(h.index) + "]"; },
      },
      t.node().v);
}

} // namespace

std::string pretty(const Term& t) {
  std::string out;
  print(t, kSum, out);
  return out;
}

std::string to_string(const Label& l, Calculus c) {
  const bool show_guard = c == Calculus::Cpg;
  return std::visit(
      detail::Overloaded{
          [&](const label::Tau& t) {
            std::string g = show_guard || !t.guard.empty() ? guard_str(t.guard) : "";
            return g + (t.level == Level::Prioritized ? "_tau" : "tau");
          },
          [&](const label::Act& a) {
            std::string g = show_guard || !a.guard.empty() ? guard_str(a.guard) : "";
            return g + lab_str(a.name, a.polarity, a.level);
          },
          [](const label::Out& o) {
            std::string s;
            if (!o.extruded.empty()) {
              s = "(new";
              for (const auto& n : o.extruded) s += " " + to_string(n);
              s += ")";
            }
            return s + join(o.subject, ":") + "!<" + join(o.payload, ",") + ">";
          },
          [](const label::In& i) {
            return join(i.subject, ":") + "?<" + join(i.received, ",") + ">";
          },
          [](const label::Kill& k) { return "kill(" + k.label.text + ")"; },
      },
      l);
}

std::string to_string(const Label& l) { return to_string(l, Calculus::Ccs); }

bool LabelPattern::matches(const Label& l) const {
  switch (kind) {
  case Kind::Act: {
    const auto* a = std::get_if<label::Act>(&l);
    return a && subject.size() == 1 && a->name == subject[0] && a->polarity == polarity &&
           a->level == level;
  }
  case Kind::Out: {
    const auto* o = std::get_if<label::Out>(&l);
    return o && o->subject == subject && (!payload || o->payload == *payload);
  }
  case Kind::In: {
    const auto* i = std::get_if<label::In>(&l);
    return i && i->subject == subject && (!payload || i->received == *payload);
  }
  }
  return false;
}

LabelPattern parse_label_pattern(std::string_view src) {
  // Small hand scanner; spans are byte offsets into src.
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  };
  auto fail = [&](const std::string& msg) -> LabelPattern {
    throw ParseError(msg, {std::min(pos, src.size()), std::min(pos + 1, src.size())});
  };
  auto ident = [&]() -> std::string {
    skip();
    const std::size_t start = pos;
    while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    if (start == pos || !std::isalpha(static_cast<unsigned char>(src[start]))) {
      pos = start;
      fail("expected a name");
    }
    return std::string(src.substr(start, pos - start));
  };
  auto eat = [&](char c) {
    skip();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  };

  LabelPattern lp;
  skip();
  // A CPG guard is accepted and ignored.
  if (eat('{')) {
    while (pos < src.size() && src[pos] != '}') ++pos;
    if (!eat('}') || !eat(':')) fail("malformed guard");
  }
  if (eat('\'')) lp.polarity = Polarity::Out;
  if (eat('_')) lp.level = Level::Prioritized;
  lp.subject.push_back(Name(ident()));
  while (eat(':')) lp.subject.push_back(Name(ident()));
  const bool plain = lp.polarity == Polarity::In && lp.level == Level::Ordinary;
  bool io = false;
  if (plain && eat('!')) {
    lp.kind = LabelPattern::Kind::Out;
    io = true;
  } else if (plain && eat('?')) {
    lp.kind = LabelPattern::Kind::In;
    io = true;
  }
  if (io) {
    if (eat('<')) {
      skip();
      if (eat('*')) {
        if (!eat('>')) fail("expected '>'");
      } else {
        Tuple payload{Name(ident())};
        while (eat(',')) payload.push_back(Name(ident()));
        if (!eat('>')) fail("expected '>'");
        lp.payload = std::move(payload);
      }
    }
  } else if (lp.polarity == Polarity::Out && lp.level == Level::Ordinary && eat('<')) {
    // 'y<c> spelling of an output.
    lp.kind = LabelPattern::Kind::Out;
    Tuple payload{Name(ident())};
    while (eat(',')) payload.push_back(Name(ident()));
    if (!eat('>')) fail("expected '>'");
    lp.payload = std::move(payload);
  } else {
    if (lp.subject.size() > 1) fail("polyadic subject needs '!' or '?'");
    if (lp.subject[0].text == "tau") fail("tau is not a visible label");
  }
  skip();
  if (pos != src.size()) fail("trailing input in label pattern");
  return lp;
}

} // namespace procalc
