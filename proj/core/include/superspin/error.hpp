#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace superspin {

enum class ErrorKind {
  // Input validation.
  InvalidConfig,
  ParseError,
  ConfigMismatch,
  LengthMismatch,
  ShapeMismatch,
  ParityMismatch,
  NotEven,
  NotGradedSymmetric,
  OddDimensionOdd,
  NotBodyReduced,
  NotInG0,
  NotInLieAlgebra,
  ModeUnsupported,
  // Numerical gates.
  BodyNotInvertible,
  DegenerateBody,
  ConvergenceViolation,
  IrrationalScale,
  NonZeroBody,
  NotUnipotent,
  BasisDegenerate,
  NotInSpan,
  NonZeroBodyOperator,
  NormBoundViolation,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for failures of a numerical precondition (singular body, divergent
/// series, ...) as opposed to malformed or inconsistent input.
bool is_numerical_gate(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string where = {});

  ErrorKind kind() const noexcept { return kind_; }
  /// Offending index/entry, when one applies ("entry (2,3)", "d[1]", ...).
  const std::string& where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::string where_;
};

}  // namespace superspin
