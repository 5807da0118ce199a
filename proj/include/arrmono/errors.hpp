#pragma once

#include <stdexcept>
#include <string>

namespace arrmono {

/// Failure categories surfaced to callers. The CLI maps them onto exit codes.
enum class ErrorKind {
  NotFibered,
  DuplicateLine,
  MalformedWiring,
  UnsupportedStratum,
  DivisionByZero,
  UnassignedParameter,
  NonSquare,
  BasepointCollision,
  ProductRelation,
  InvalidArgument,
  ConstructionMismatch,
  Parse,
};

inline const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotFibered: return "NotFibered";
    case ErrorKind::DuplicateLine: return "DuplicateLine";
    case ErrorKind::MalformedWiring: return "MalformedWiring";
    case ErrorKind::UnsupportedStratum: return "UnsupportedStratum";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::UnassignedParameter: return "UnassignedParameter";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::BasepointCollision: return "BasepointCollision";
    case ErrorKind::ProductRelation: return "ProductRelation";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConstructionMismatch: return "ConstructionMismatch";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace arrmono
