#include "bkdpp/errors.hpp"

namespace bkdpp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::PointOutOfRange: return "PointOutOfRange";
    case ErrorCode::WrongCardinality: return "WrongCardinality";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::FullRank: return "FullRank";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::InvalidFrame: return "InvalidFrame";
    case ErrorCode::TooManyPoints: return "TooManyPoints";
    case ErrorCode::InconsistentCase: return "InconsistentCase";
    case ErrorCode::ZeroProbabilityCondition: return "ZeroProbabilityCondition";
    case ErrorCode::OverlappingSets: return "OverlappingSets";
    case ErrorCode::EmptyGenerator: return "EmptyGenerator";
    case ErrorCode::PointAlreadyGenerating: return "PointAlreadyGenerating";
    case ErrorCode::GroundSizeMismatch: return "GroundSizeMismatch";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace bkdpp
