#ifndef NEGTYPE_ERROR_HPP
#define NEGTYPE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace negtype {

enum class ErrorKind {
  AsymmetricMatrix,
  NonzeroDiagonal,
  NonpositiveOffDiagonal,
  TooSmall,
  NegativeExponent,
  NonpositiveScale,
  NotATree,
  NonpositiveWeight,
  BlockSizeTooSmall,
  ExponentsNotDecreasing,
  DuplicateAngle,
  BadRange,
  InvalidTolerance,
  EigensolverFailure,
  IntervalAnomaly,
  NoBoundaryWitness,
  InvalidSimplex,
  BadNormalization,
  TooManyPoints,
  NotUnitWeights,
  TooFewPoints,
  NegativeGap,
  ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorKind::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorKind::NonpositiveOffDiagonal: return "NonpositiveOffDiagonal";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::NegativeExponent: return "NegativeExponent";
    case ErrorKind::NonpositiveScale: return "NonpositiveScale";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorKind::BlockSizeTooSmall: return "BlockSizeTooSmall";
    case ErrorKind::ExponentsNotDecreasing: return "ExponentsNotDecreasing";
    case ErrorKind::DuplicateAngle: return "DuplicateAngle";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::InvalidTolerance: return "InvalidTolerance";
    case ErrorKind::EigensolverFailure: return "EigensolverFailure";
    case ErrorKind::IntervalAnomaly: return "IntervalAnomaly";
    case ErrorKind::NoBoundaryWitness: return "NoBoundaryWitness";
    case ErrorKind::InvalidSimplex: return "InvalidSimplex";
    case ErrorKind::BadNormalization: return "BadNormalization";
    case ErrorKind::TooManyPoints: return "TooManyPoints";
    case ErrorKind::NotUnitWeights: return "NotUnitWeights";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::NegativeGap: return "NegativeGap";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace negtype

#endif  // NEGTYPE_ERROR_HPP
