#include "conicsub/error.hpp"

namespace conicsub {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::CoincidentPoints: return "CoincidentPoints";
    case Errc::CoincidentLines: return "CoincidentLines";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NotCollinear: return "NotCollinear";
    case Errc::DegenerateFrame: return "DegenerateFrame";
    case Errc::DegenerateStencil: return "DegenerateStencil";
    case Errc::DegenerateConfiguration: return "DegenerateConfiguration";
    case Errc::PointNotOnConic: return "PointNotOnConic";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::CoincidentTangents: return "CoincidentTangents";
    case Errc::NoCandidates: return "NoCandidates";
    case Errc::ParameterOutsideRegion: return "ParameterOutsideRegion";
    case Errc::ContainmentViolation: return "ContainmentViolation";
    case Errc::UnsplittableSegment: return "UnsplittableSegment";
    case Errc::JunctionCondition: return "JunctionCondition";
    case Errc::OppositeLines: return "OppositeLines";
    case Errc::TangentApexAtInfinity: return "TangentApexAtInfinity";
    case Errc::GradientVanishes: return "GradientVanishes";
    case Errc::ProvenanceMismatch: return "ProvenanceMismatch";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

}  // namespace conicsub
