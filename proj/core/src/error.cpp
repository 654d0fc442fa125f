#include "superspin/error.hpp"

namespace superspin {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ConfigMismatch: return "ConfigMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ParityMismatch: return "ParityMismatch";
    case ErrorKind::NotEven: return "NotEven";
    case ErrorKind::NotGradedSymmetric: return "NotGradedSymmetric";
    case ErrorKind::OddDimensionOdd: return "OddDimensionOdd";
    case ErrorKind::NotBodyReduced: return "NotBodyReduced";
    case ErrorKind::NotInG0: return "NotInG0";
    case ErrorKind::NotInLieAlgebra: return "NotInLieAlgebra";
    case ErrorKind::ModeUnsupported: return "ModeUnsupported";
    case ErrorKind::BodyNotInvertible: return "BodyNotInvertible";
    case ErrorKind::DegenerateBody: return "DegenerateBody";
    case ErrorKind::ConvergenceViolation: return "ConvergenceViolation";
    case ErrorKind::IrrationalScale: return "IrrationalScale";
    case ErrorKind::NonZeroBody: return "NonZeroBody";
    case ErrorKind::NotUnipotent: return "NotUnipotent";
    case ErrorKind::BasisDegenerate: return "BasisDegenerate";
    case ErrorKind::NotInSpan: return "NotInSpan";
    case ErrorKind::NonZeroBodyOperator: return "NonZeroBodyOperator";
    case ErrorKind::NormBoundViolation: return "NormBoundViolation";
  }
  return "Unknown";
}

bool is_numerical_gate(ErrorKind kind) noexcept {
  return kind >= ErrorKind::BodyNotInvertible;
}

Error::Error(ErrorKind kind, const std::string& message, std::string where)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message +
                         (where.empty() ? std::string() : " [" + where + "]")),
      kind_(kind),
      where_(std::move(where)) {}

}  // namespace superspin
