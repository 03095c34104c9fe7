#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace commnet {

/// Base class for all commnet errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Concrete-syntax error with 1-based source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line(line),
        column(column) {}

  int line;
  int column;
};

/// Errors raised while exploring a net.
class ExploreError : public Error {
 public:
  enum class Kind { capacity_exceeded, state_limit_exceeded };

  ExploreError(Kind kind, const std::string& what) : Error(what), kind(kind) {}

  Kind kind;
  std::string channel;  // capacity_exceeded: offending channel
  std::string packet;   // capacity_exceeded: offending packet
};

/// Errors raised by equivalence-based rewriting.
class RewriteError : public Error {
 public:
  enum class Kind {
    no_match,
    ambiguous_match,
    side_condition_unmet,
    end_mismatch,
    step_invalid,
    bad_script
  };

  RewriteError(Kind kind, const std::string& what) : Error(what), kind(kind) {}

  Kind kind;
};

}  // namespace commnet
