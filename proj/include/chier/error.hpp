#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chier {

enum class ErrorKind {
  NonFinite,
  NonHermitianInput,
  NonPositiveSpectrum,
  NonSquare,
  NotUnitary,
  DegreeOutOfRange,
  NoSignChange,
  IndexOutOfRange,
  ZeroState,
  NotNormalized,
  DuplicateEntry,
  NegativeCoefficient,
  DimensionMismatch,
  DimensionTooLargeForMinors,
  InvalidSpectrum,
  NonPositiveOrder,
  InvalidDensity,
  OutOfRange,
  ParseError,
  SelfCheckFailed,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace chier
