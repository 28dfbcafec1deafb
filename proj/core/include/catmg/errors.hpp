#pragma once

#include <stdexcept>
#include <string>

namespace catmg {

enum class ErrorKind {
  NonInvolution,
  WrongBraidOrder,
  RootMismatch,
  NotInInterval,
  DimensionMismatch,
  NotDivisible,
  ZeroDivisor,
  InhomogeneousInput,
  NotInSpan,
  NotClosedUnderAction,
  NotSeparating,
  DegreeCapExhausted,
  IncompatibleVertexSet,
  NonAssociative,
  GradingAssertFailed,
  RadicalNotNilpotent,
  RouteMismatch,
  ResolutionTooShort,
  NotReducedWord,
  ConfigError,
};

const char* error_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& what)
      : std::runtime_error(std::string(error_name(k)) + ": " + what), kind_(k) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonInvolution: return "NonInvolution";
    case ErrorKind::WrongBraidOrder: return "WrongBraidOrder";
    case ErrorKind::RootMismatch: return "RootMismatch";
    case ErrorKind::NotInInterval: return "NotInInterval";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::InhomogeneousInput: return "InhomogeneousInput";
    case ErrorKind::NotInSpan: return "NotInSpan";
    case ErrorKind::NotClosedUnderAction: return "NotClosedUnderAction";
    case ErrorKind::NotSeparating: return "NotSeparating";
    case ErrorKind::DegreeCapExhausted: return "DegreeCapExhausted";
    case ErrorKind::IncompatibleVertexSet: return "IncompatibleVertexSet";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::GradingAssertFailed: return "GradingAssertFailed";
    case ErrorKind::RadicalNotNilpotent: return "RadicalNotNilpotent";
    case ErrorKind::RouteMismatch: return "RouteMismatch";
    case ErrorKind::ResolutionTooShort: return "ResolutionTooShort";
    case ErrorKind::NotReducedWord: return "NotReducedWord";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace catmg
