#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pinball {

enum class ErrorCode {
  // geometry
  NonSimplePolygon,
  ClockwiseOrientation,
  DegenerateSide,
  VertexStart,
  GrazingRay,
  ParallelLines,
  NoHit,
  IllegalItinerary,
  VertexCrossing,
  // dynamics
  VertexHit,
  AngleOverflow,
  // cylinder / stability
  OddPeriod,
  EmptyInterval,
  NecessaryConditionFailed,
  OutsideBase,
  InvalidBracket,
  SlopeOne,
  // catalog / io
  UnknownName,
  BadParameter,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every domain failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pinball
