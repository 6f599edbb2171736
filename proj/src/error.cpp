#include "ccq/error.hpp"

namespace ccq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::UnknownCatalogName: return "UnknownCatalogName";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::PointOutOfRange: return "PointOutOfRange";
    case ErrorCode::OracleNonConvergence: return "OracleNonConvergence";
    case ErrorCode::ShapeHypothesisUnverified: return "ShapeHypothesisUnverified";
    case ErrorCode::InvalidHolder: return "InvalidHolder";
    case ErrorCode::NoFeasibleP: return "NoFeasibleP";
    case ErrorCode::NoApplicableTheorem: return "NoApplicableTheorem";
    case ErrorCode::NonPositiveArgument: return "NonPositiveArgument";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
  }
  return "Unknown";
}

}  // namespace ccq
