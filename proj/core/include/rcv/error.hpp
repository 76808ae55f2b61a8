#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rcv {

/// Base class for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (empty profile, bad subset, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// IRV ran out of continuing ballots before any candidate could be declared.
class NoWinner : public Error {
 public:
  using Error::Error;
};

/// A ballot shift asked for more ballots than its source group holds.
class InsufficientCount : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed; always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class ParseErrorKind {
  BadHeader,
  UnknownCandidate,
  DuplicateCandidateInRanking,
  BadCount,
  ReservedCharacter,
  TiesUnsupported,
  EmptyRanking,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public Error {
 public:
  ParseError(std::size_t line, ParseErrorKind kind, std::string message);

  std::size_t line() const { return line_; }
  ParseErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  ParseErrorKind kind_;
  std::string detail_;
};

}  // namespace rcv
