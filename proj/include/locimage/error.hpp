#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace locimage {

enum class ErrorCode {
  DimensionMismatch,
  NotDivisible,
  IndexOutOfRange,
  UndefinedGcd,
  ZeroInput,
  Precondition,
  ConstantMap,
  NotThroughOrigin,
  SyntaxError,
  UnknownVariable,
  SamplingFailed,
  ImageContainer,
  Io,
  Internal,
};

/// Machine-readable name, e.g. "dimension_mismatch".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace locimage
