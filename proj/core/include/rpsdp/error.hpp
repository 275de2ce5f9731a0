#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rpsdp {

enum class ErrorKind {
  InvalidDimension,
  InvalidDensity,
  DimensionMismatch,
  InvalidMatrix,
  MissingDualBounds,
  MalformedLine,
  MalformedHeader,
  VertexOutOfRange,
  DuplicateEdge,
  ClauseTooLong,
  InvalidParameters,
  WeightedInput,
  NonpositiveInput,
  UnknownLemma,
  InsufficientTrials,
  DegenerateGrid,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every recoverable failure raised by the library. `kind()` lets callers
/// branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::InvalidDensity: return "invalid-density";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::InvalidMatrix: return "invalid-matrix";
    case ErrorKind::MissingDualBounds: return "missing-dual-bounds";
    case ErrorKind::MalformedLine: return "malformed-line";
    case ErrorKind::MalformedHeader: return "malformed-header";
    case ErrorKind::VertexOutOfRange: return "out-of-range-vertex";
    case ErrorKind::DuplicateEdge: return "duplicate-edge";
    case ErrorKind::ClauseTooLong: return "clause-too-long";
    case ErrorKind::InvalidParameters: return "invalid-parameters";
    case ErrorKind::WeightedInput: return "weighted-input";
    case ErrorKind::NonpositiveInput: return "nonpositive-input";
    case ErrorKind::UnknownLemma: return "unknown-lemma";
    case ErrorKind::InsufficientTrials: return "insufficient-trials";
    case ErrorKind::DegenerateGrid: return "degenerate-grid";
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace rpsdp
