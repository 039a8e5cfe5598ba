#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace metext {

enum class ErrorCode {
  // complex construction and points
  DuplicateVertex,
  UnknownVertex,
  UnknownVertexInSimplex,
  EmptySimplex,
  WeightsNotNormalizable,
  SupportNotASimplex,
  NegativeWeight,
  NoCommonSimplex,
  NotAnAutomorphism,
  // vertex metrics
  DisconnectedComplex,
  NotSymmetric,
  NegativeDistance,
  NonzeroDiagonal,
  TriangleViolation,
  SuppliedConstantTooSmall,
  InvalidMetricShape,
  // path metric
  InvalidCarrier,
  EmptyIntersection,
  EndpointNotInCarrier,
  ChainBudgetExceeded,
  // oracles
  PointNotOnGrid,
  ResolutionTooCoarse,
  NotATree,
  // probes
  InvalidConfiguration,
  MissingQIConstants,
  // workbench
  InvalidParameters,
  ParseError,
  // a solver produced a value below one of its own admissible lower bounds
  InternalInconsistency,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace metext
