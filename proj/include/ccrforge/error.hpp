#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ccrforge {

enum class ErrorKind {
  NotClosed,
  NotAssociative,
  NoIdentity,
  NoInverse,
  UnknownKind,
  ShapeMismatch,
  SizeMismatch,
  NotUnitary,
  M1Violation,
  NotScalarAlgebra,
  IllDefinedPhase,
  AxiomFailure,
  NotAnAction,
  AutomorphismFactorizationFailure,
  GramNotIdentity,
  ConstraintViolation,
  KindMismatch,
  SyntaxError,
  SchemaError,
  DimensionMismatch,
  IoError,
};

inline constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::UnknownKind: return "UnknownKind";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::M1Violation: return "M1Violation";
    case ErrorKind::NotScalarAlgebra: return "NotScalarAlgebra";
    case ErrorKind::IllDefinedPhase: return "IllDefinedPhase";
    case ErrorKind::AxiomFailure: return "AxiomFailure";
    case ErrorKind::NotAnAction: return "NotAnAction";
    case ErrorKind::AutomorphismFactorizationFailure: return "AutomorphismFactorizationFailure";
    case ErrorKind::GramNotIdentity: return "GramNotIdentity";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ccrforge
