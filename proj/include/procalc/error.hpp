#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace procalc {

/// Byte offsets [start, end) into a source string.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised by the parser; carries the offending span.
class ParseError : public Error {
public:
  ParseError(const std::string& message, SourceSpan span)
      : Error(message), span_(span) {}
  SourceSpan span() const { return span_; }

private:
  SourceSpan span_;
};

/// A term uses a construct its calculus does not admit.
class ProfileError : public Error {
public:
  using Error::Error;
};

/// Runtime semantic failures: undefined definitions, arity mismatches,
/// unguarded recursion, malformed priority orders.
class SemanticError : public Error {
public:
  using Error::Error;
};

/// A context was used where a process is required, or plugging failed.
class ContextError : public Error {
public:
  using Error::Error;
};

/// Simulation was asked to run over a state space that was cut by bounds.
class IncompleteLtsError : public Error {
public:
  using Error::Error;
};

} // namespace procalc
