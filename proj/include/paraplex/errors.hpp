#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace paraplex {

enum class ErrorKind {
  DivisionByZero,
  DomainError,
  SingularMatrix,
  SyntaxError,
  UnknownFunction,
  UnboundVariable,
  SingularMetric,
  UnsupportedSignature,
  TargetOutsideChart,
  NotParacomplex,
  NotIsometric,
  PoleOfChart,
  OutsideHemisphere,
  DegenerateLine,
  HorizontalLine,
  ChartDegeneracy,
  NormalizationImpossible,
  FrameDegeneracy,
  IndefinitePlane,
  DegenerateSpan,
  CoincidentPlanes,
  DegenerateStructure,
  PolarDegeneracy,
  GridTooCoarse,
  UnknownSuite,
  ConfigError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace paraplex
