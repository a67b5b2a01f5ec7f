#include "paraplex/errors.hpp"

namespace paraplex {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::SingularMetric: return "SingularMetric";
    case ErrorKind::UnsupportedSignature: return "UnsupportedSignature";
    case ErrorKind::TargetOutsideChart: return "TargetOutsideChart";
    case ErrorKind::NotParacomplex: return "NotParacomplex";
    case ErrorKind::NotIsometric: return "NotIsometric";
    case ErrorKind::PoleOfChart: return "PoleOfChart";
    case ErrorKind::OutsideHemisphere: return "OutsideHemisphere";
    case ErrorKind::DegenerateLine: return "DegenerateLine";
    case ErrorKind::HorizontalLine: return "HorizontalLine";
    case ErrorKind::ChartDegeneracy: return "ChartDegeneracy";
    case ErrorKind::NormalizationImpossible: return "NormalizationImpossible";
    case ErrorKind::FrameDegeneracy: return "FrameDegeneracy";
    case ErrorKind::IndefinitePlane: return "IndefinitePlane";
    case ErrorKind::DegenerateSpan: return "DegenerateSpan";
    case ErrorKind::CoincidentPlanes: return "CoincidentPlanes";
    case ErrorKind::DegenerateStructure: return "DegenerateStructure";
    case ErrorKind::PolarDegeneracy: return "PolarDegeneracy";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace paraplex
