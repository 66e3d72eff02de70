// Recursive-descent parser for the unified surface syntax.

#include <cctype>
#include <unordered_map>

#include "procalc/error.hpp"
#include "procalc/surface.hpp"

namespace procalc {

namespace {

enum class Tok { Ident, Number, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", {src_.size(), src_.size()}});
        return out;
      }
      const std::size_t start = pos_;
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_'))
          ++pos_;
        out.push_back({Tok::Ident, std::string(src_.substr(start, pos_ - start)), {start, pos_}});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        out.push_back({Tok::Number, std::string(src_.substr(start, pos_ - start)), {start, pos_}});
      } else if (std::string_view("()[]{}<>.,:|+!?'_\\=@/").find(c) != std::string_view::npos) {
        ++pos_;
        out.push_back({Tok::Sym, std::string(1, c), {start, pos_}});
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", {start, start + 1});
      }
    }
  }

private:
  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

bool is_keyword(const std::string& s) { return s == "tau" || s == "new"; }

class Parser {
public:
  Parser(std::vector<Token> toks, std::unordered_map<const Node*, SourceSpan>& spans)
      : toks_(std::move(toks)), spans_(spans) {}

  Term parse_all() {
    Term t = parse_sum();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "' after term", peek());
    return t;
  }

private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_sym(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Sym && peek(ahead).text == s;
  }
  bool at_word(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == s;
  }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] static void fail(const std::string& msg, const Token& at) {
    throw ParseError(msg, at.span);
  }

  const Token& expect_sym(const char* s) {
    if (!at_sym(s)) {
      const std::string got = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
      fail(std::string("expected '") + s + "', got " + got, peek());
    }
    return take();
  }

  std::string expect_ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(std::string("expected ") + what, peek());
    if (is_keyword(peek().text)) fail("'" + peek().text + "' is reserved", peek());
    return take().text;
  }

  Name expect_name() { return Name(expect_ident("name")); }

  Term mark(Term t, std::size_t start) {
    spans_.emplace(t.get(), SourceSpan{start, toks_[pos_ > 0 ? pos_ - 1 : 0].span.end});
    return t;
  }

  Term parse_sum() {
    const std::size_t start = peek().span.start;
    std::vector<Term> branches{parse_par()};
    while (at_sym("+")) {
      take();
      branches.push_back(parse_par());
    }
    if (branches.size() == 1) return branches.front();
    return mark(sum(std::move(branches)), start);
  }

  Term parse_par() {
    const std::size_t start = peek().span.start;
    Term t = parse_unary();
    while (at_sym("|")) {
      take();
      t = mark(par(t, parse_unary()), start);
    }
    return t;
  }

  /// Prefix-like term followed by postfix restrictions and relabellings.
  Term parse_unary() {
    const std::size_t start = peek().span.start;
    Term t = parse_prefixlike();
    while (true) {
      if (at_sym("\\")) {
        take();
        expect_sym("{");
        std::set<LevelledName> labels{parse_lab()};
        while (at_sym(",")) {
          take();
          labels.insert(parse_lab());
        }
        expect_sym("}");
        t = mark(restrict(std::move(labels), t), start);
      } else if (at_sym("[") && peek(1).kind == Tok::Ident && at_sym("/", 2)) {
        take();
        std::map<Name, Name> map;
        while (true) {
          Name to = expect_name();
          expect_sym("/");
          const Token& from_tok = peek();
          Name from = expect_name();
          if (!map.emplace(from, to).second) fail("name relabelled twice", from_tok);
          if (!at_sym(",")) break;
          take();
        }
        expect_sym("]");
        t = mark(relabel(t, std::move(map)), start);
      } else {
        return t;
      }
    }
  }

  LevelledName parse_lab() {
    Level level = Level::Ordinary;
    if (at_sym("_")) {
      take();
      level = Level::Prioritized;
    }
    return LevelledName{expect_name(), level};
  }

  Term parse_continuation(const Token& dot) {
    const Token& next = peek();
    if (next.kind == Tok::End ||
        (next.kind == Tok::Sym && std::string_view(")|+,]}").find(next.text[0]) != std::string_view::npos))
      fail("expected term after prefix dot", dot);
    return parse_prefixlike();
  }

  Term prefixed(PrefixAction a, std::size_t start) {
    const Token& dot = expect_sym(".");
    Term cont = parse_continuation(dot);
    return mark(prefix(std::move(a), cont), start);
  }

  Tuple parse_subject() {
    Tuple s{expect_name()};
    while (at_sym(":")) {
      take();
      s.push_back(expect_name());
    }
    return s;
  }

  Tuple parse_name_list(const char* close) {
    Tuple out;
    if (at_sym(close)) fail("expected at least one name", peek());
    out.push_back(expect_name());
    while (at_sym(",")) {
      take();
      out.push_back(expect_name());
    }
    return out;
  }

  /// Send with optional continuation: `s!<..>` alone has continuation 0.
  Term parse_send(Tuple subject, std::size_t start) {
    expect_sym("<");
    Tuple payload = parse_name_list(">");
    expect_sym(">");
    act::PiOut a{std::move(subject), std::move(payload)};
    if (at_sym(".")) return prefixed(std::move(a), start);
    return mark(prefix(std::move(a), nil()), start);
  }

  Term parse_receive(Tuple subject, std::size_t start) {
    expect_sym("(");
    Pattern pat;
    while (true) {
      PatternItem item;
      if (at_sym("@")) {
        take();
        item.is_protected = true;
      }
      item.name = expect_name();
      pat.push_back(std::move(item));
      if (!at_sym(",")) break;
      take();
    }
    expect_sym(")");
    return prefixed(act::PiIn{std::move(subject), std::move(pat)}, start);
  }

  GuardSet parse_guard() {
    expect_sym("{");
    GuardSet g;
    while (!at_sym("}")) {
      g.insert(expect_name());
      if (at_sym(",")) take();
    }
    expect_sym("}");
    expect_sym(":");
    return g;
  }

  Term parse_prefixlike() {
    const Token& tok = peek();
    const std::size_t start = tok.span.start;
    if (tok.kind == Tok::End) fail("unexpected end of input, expected a term", tok);
    if (tok.kind == Tok::Number) {
      if (tok.text != "0") fail("unexpected number '" + tok.text + "'", tok);
      take();
      return mark(nil(), start);
    }
    if (tok.kind == Tok::Sym) {
      switch (tok.text[0]) {
      case '(': {
        take();
        if (at_word("new")) {
          take();
          std::vector<Name> bound{expect_name()};
          while (peek().kind == Tok::Ident) bound.push_back(expect_name());
          expect_sym(")");
          Term body = parse_prefixlike();
          for (auto it = bound.rbegin(); it != bound.rend(); ++it) body = mark(nu(*it, body), start);
          return body;
        }
        Term t = parse_sum();
        expect_sym(")");
        return t;
      }
      case '!': {
        take();
        Term body = parse_prefixlike();
        return mark(bang(body), start);
      }
      case '[': {
        take();
        if (at_sym("_")) {
          take();
          if (peek().kind != Tok::Number) fail("expected hole index", peek());
          const Token& num = take();
          const unsigned long idx = std::stoul(num.text);
          if (idx == 0 || idx > 1024) fail("hole index out of range", num);
          expect_sym("]");
          return mark(hole(static_cast<unsigned>(idx)), start);
        }
        std::string first = expect_ident("name or killer label");
        if (at_sym("=")) {
          take();
          Name rhs = expect_name();
          expect_sym("]");
          Term cont = parse_prefixlike();
          return mark(match(Name(first), rhs, cont), start);
        }
        expect_sym("]");
        Term body = parse_prefixlike();
        return mark(delimit(KillerLabel{first}, body), start);
      }
      case '{': {
        GuardSet g = parse_guard();
        return parse_simple_prefix(start, std::move(g));
      }
      case '\'':
      case '_':
        return parse_simple_prefix(start, {});
      default:
        fail("unexpected '" + tok.text + "', expected a term", tok);
      }
    }
    // Identifier.
    if (at_sym("(", 1)) {
      if (tok.text == "theta") {
        take();
        take();
        Term body = parse_sum();
        expect_sym(")");
        return mark(theta(body), start);
      }
      if (tok.text == "up" || tok.text == "down") {
        const bool up = tok.text == "up";
        take();
        take();
        Term body = parse_sum();
        expect_sym(",");
        Name a = expect_name();
        expect_sym(")");
        return mark(up ? prioritize(body, a) : deprioritize(body, a), start);
      }
      if (tok.text == "kill") {
        take();
        take();
        std::string k = expect_ident("killer label");
        expect_sym(")");
        return mark(kill(KillerLabel{k}), start);
      }
    }
    if (at_sym("<", 1)) {
      std::string id = take().text;
      take();
      std::vector<Name> args;
      if (!at_sym(">")) args = parse_name_list(">");
      expect_sym(">");
      return mark(call(std::move(id), std::move(args)), start);
    }
    return parse_simple_prefix(start, {});
  }

  /// tau, CCS-family actions and pi prefixes, after an optional guard.
  Term parse_simple_prefix(std::size_t start, GuardSet guard) {
    if (at_word("tau")) {
      take();
      return prefixed(act::Tau{std::move(guard)}, start);
    }
    if (at_sym("'")) {
      take();
      Level level = Level::Ordinary;
      if (at_sym("_")) {
        take();
        level = Level::Prioritized;
      }
      const Token& name_tok = peek();
      if (at_word("tau")) fail("'tau' has no co-action", name_tok);
      Name n = expect_name();
      if (at_sym("<")) {
        if (level != Level::Ordinary || !guard.empty())
          fail("pi output cannot carry a level or guard", name_tok);
        return parse_send(Tuple{n}, start);
      }
      return prefixed(act::Ccs{n, Polarity::Out, level, std::move(guard)}, start);
    }
    if (at_sym("_")) {
      take();
      if (at_word("tau")) fail("'_tau' is not a prefix; prioritized tau arises from synchronisation", peek());
      Name n = expect_name();
      return prefixed(act::Ccs{n, Polarity::In, Level::Prioritized, std::move(guard)}, start);
    }
    if (peek().kind != Tok::Ident) fail("expected a prefix", peek());
    const Token& name_tok = peek();
    Tuple subject = parse_subject();
    if (at_sym("!")) {
      take();
      if (!guard.empty()) fail("pi output cannot carry a guard", name_tok);
      return parse_send(std::move(subject), start);
    }
    if (at_sym("?")) {
      take();
      if (!guard.empty()) fail("pi input cannot carry a guard", name_tok);
      return parse_receive(std::move(subject), start);
    }
    if (subject.size() > 1) fail("expected '!' or '?' after polyadic subject", peek());
    if (!at_sym(".")) fail("expected '.' after action '" + to_string(subject[0]) + "'", peek());
    return prefixed(act::Ccs{subject[0], Polarity::In, Level::Ordinary, std::move(guard)}, start);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::unordered_map<const Node*, SourceSpan>& spans_;
};

/// Follows a violation path ("/0/1") down from the root to find the node.
SourceSpan span_for(const Violation& v, const std::unordered_map<const Node*, SourceSpan>& spans,
                    std::size_t len) {
  if (v.node) {
    auto it = spans.find(v.node);
    if (it != spans.end()) return it->second;
  }
  return SourceSpan{0, len};
}

} // namespace

Term parse_syntax(std::string_view src) {
  std::unordered_map<const Node*, SourceSpan> spans;
  Parser p(Lexer(src).run(), spans);
  return p.parse_all();
}

ParseResult parse_term(std::string_view src, const CalculusProfile& profile) {
  ParseResult r;
  std::unordered_map<const Node*, SourceSpan> spans;
  Term t;
  try {
    Parser p(Lexer(src).run(), spans);
    t = p.parse_all();
  } catch (const ParseError& e) {
    r.diagnostics.push_back({e.what(), e.span()});
    return r;
  }
  for (const auto& v : validate_profile(t, profile))
    r.diagnostics.push_back({v.message, span_for(v, spans, src.size())});
  if (r.diagnostics.empty()) r.term = t;
  return r;
}

Term parse_or_throw(std::string_view src, const CalculusProfile& profile) {
  ParseResult r = parse_term(src, profile);
  if (!r.ok()) throw ParseError(r.diagnostics.front().message, r.diagnostics.front().span);
  return *r.term;
}

} // namespace procalc
