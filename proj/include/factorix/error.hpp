#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace factorix {

enum class ErrorCode {
  DegreeMismatch,
  InvalidPermutation,
  ParseError,
  OrderCapExceeded,
  NotNormal,
  NoSuchPrime,
  InvalidPosition,
  ConditionFailed,
  AnchorInvalid,
  PrefixCollision,
  UnknownId,
  ElementNotInGroup,
  PreconditionFailed,
  InvalidCertificate,
  AllStrategiesFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace factorix
