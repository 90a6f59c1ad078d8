#include "pinball/error.hpp"

namespace pinball {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSimplePolygon: return "NonSimplePolygon";
    case ErrorCode::ClockwiseOrientation: return "ClockwiseOrientation";
    case ErrorCode::DegenerateSide: return "DegenerateSide";
    case ErrorCode::VertexStart: return "VertexStart";
    case ErrorCode::GrazingRay: return "GrazingRay";
    case ErrorCode::ParallelLines: return "ParallelLines";
    case ErrorCode::NoHit: return "NoHit";
    case ErrorCode::IllegalItinerary: return "IllegalItinerary";
    case ErrorCode::VertexCrossing: return "VertexCrossing";
    case ErrorCode::VertexHit: return "VertexHit";
    case ErrorCode::AngleOverflow: return "AngleOverflow";
    case ErrorCode::OddPeriod: return "OddPeriod";
    case ErrorCode::EmptyInterval: return "EmptyInterval";
    case ErrorCode::NecessaryConditionFailed: return "NecessaryConditionFailed";
    case ErrorCode::OutsideBase: return "OutsideBase";
    case ErrorCode::InvalidBracket: return "InvalidBracket";
    case ErrorCode::SlopeOne: return "SlopeOne";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace pinball
