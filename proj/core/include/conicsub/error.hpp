#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace conicsub {

enum class Errc {
  CoincidentPoints,
  CoincidentLines,
  ZeroVector,
  NotCollinear,
  DegenerateFrame,
  DegenerateStencil,
  DegenerateConfiguration,
  PointNotOnConic,
  TooFewPoints,
  CoincidentTangents,
  NoCandidates,
  ParameterOutsideRegion,
  ContainmentViolation,
  UnsplittableSegment,
  JunctionCondition,
  OppositeLines,
  TangentApexAtInfinity,
  GradientVanishes,
  ProvenanceMismatch,
  InvalidConfig,
  ParseError,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);

  /// 1-based line number of the offending input line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace conicsub
