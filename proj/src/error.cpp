#include "metext/error.hpp"

namespace metext {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownVertexInSimplex: return "UnknownVertexInSimplex";
    case ErrorCode::EmptySimplex: return "EmptySimplex";
    case ErrorCode::WeightsNotNormalizable: return "WeightsNotNormalizable";
    case ErrorCode::SupportNotASimplex: return "SupportNotASimplex";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NoCommonSimplex: return "NoCommonSimplex";
    case ErrorCode::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorCode::DisconnectedComplex: return "DisconnectedComplex";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::SuppliedConstantTooSmall: return "SuppliedConstantTooSmall";
    case ErrorCode::InvalidMetricShape: return "InvalidMetricShape";
    case ErrorCode::InvalidCarrier: return "InvalidCarrier";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::EndpointNotInCarrier: return "EndpointNotInCarrier";
    case ErrorCode::ChainBudgetExceeded: return "ChainBudgetExceeded";
    case ErrorCode::PointNotOnGrid: return "PointNotOnGrid";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorCode::MissingQIConstants: return "MissingQIConstants";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace metext
