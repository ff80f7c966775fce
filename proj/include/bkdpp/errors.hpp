#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bkdpp {

enum class ErrorCode {
  DimensionMismatch,
  RankDeficient,
  PointOutOfRange,
  WrongCardinality,
  EnumerationTooLarge,
  FullRank,
  NotOrthogonal,
  InvalidFrame,
  TooManyPoints,
  InconsistentCase,
  ZeroProbabilityCondition,
  OverlappingSets,
  EmptyGenerator,
  PointAlreadyGenerating,
  GroundSizeMismatch,
  DomainError,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI, the fuzzer) can classify it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bkdpp
