#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mbkdv {

enum class ErrorCode {
  // input-domain failures
  AlphaZero,
  AlphaOutOfRange,
  AlphaDegenerate,
  RangeTooSmall,
  XRational,
  NotRationalResonance,
  InconsistentFamily,
  XiBelowCutoff,
  DimensionMismatch,
  UnknownTable,
  ConfigInvalid,
  // numerical failures
  PrecisionExhausted,
  InsufficientWitnesses,
  BlowupDetected,
  DegenerateFit,
  QuadratureUnderResolved,
};

std::string_view to_string(ErrorCode code);

/// True for failures caused by the numerics rather than by the caller's input.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mbkdv
