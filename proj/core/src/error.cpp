#include "rcv/error.hpp"

namespace rcv {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::BadHeader:
      return "bad-header";
    case ParseErrorKind::UnknownCandidate:
      return "unknown-candidate";
    case ParseErrorKind::DuplicateCandidateInRanking:
      return "duplicate-candidate-in-ranking";
    case ParseErrorKind::BadCount:
      return "bad-count";
    case ParseErrorKind::ReservedCharacter:
      return "reserved-character";
    case ParseErrorKind::TiesUnsupported:
      return "ties-unsupported";
    case ParseErrorKind::EmptyRanking:
      return "empty-ranking";
  }
  return "unknown";
}

ParseError::ParseError(std::size_t line, ParseErrorKind kind, std::string message)
    : Error("line " + std::to_string(line) + ": " + to_string(kind) + ": " + message),
      line_(line),
      kind_(kind),
      detail_(std::move(message)) {}

}  // namespace rcv
