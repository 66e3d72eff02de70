#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "procalc/error.hpp"
#include "procalc/profile.hpp"
#include "procalc/sos.hpp"
#include "procalc/term.hpp"

namespace procalc {

struct Diagnostic {
  std::string message;
  SourceSpan span;
};

struct ParseResult {
  std::optional<Term> term;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return term.has_value() && diagnostics.empty(); }
};

/// Parses and profile-validates a term or context. Never throws on bad input;
/// every problem is reported as a spanned diagnostic.
ParseResult parse_term(std::string_view src, const CalculusProfile& profile);

/// Syntax only, no profile check. Throws ParseError.
Term parse_syntax(std::string_view src);

/// parse_term, throwing ParseError with the first diagnostic.
Term parse_or_throw(std::string_view src, const CalculusProfile& profile);

/// Minimal-parenthesis surface form. Parser-produced terms round-trip up to
/// alpha-equivalence.
std::string pretty(const Term& t);

/// Printed label. Under CPG every label shows its guard, `{}:` included.
std::string to_string(const Label& l, Calculus c);
std::string to_string(const Label& l);

/// Pattern over visible labels for can-perform queries. Spelled like a
/// printed label, with optional payload:
///   a  'a  _a  '_a     CCS-family actions (underscore = prioritized)
///   x!  x!<b>  x:y!<*>  outputs (payload omitted or `*` = any)
///   x?  x?<b>          inputs
struct LabelPattern {
  enum class Kind { Act, Out, In } kind = Kind::Act;
  Tuple subject;
  Polarity polarity = Polarity::In;  // Act only
  Level level = Level::Ordinary;     // Act only
  std::optional<Tuple> payload;      // Out/In only; nullopt = wildcard

  bool matches(const Label& l) const;
};

/// Throws ParseError.
LabelPattern parse_label_pattern(std::string_view src);

} // namespace procalc
