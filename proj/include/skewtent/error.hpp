#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skewtent {

enum class ErrorCode {
  InvalidMap,
  NotReducible,
  OutOfDomain,
  WrongRegion,
  DepthOverflow,
  PrecisionLoss,
  NotClassified,
  Inadmissible,
  InvalidWord,
  NoBoundedOrbit,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the
/// message holds the measured quantity when there is one (gap, residual, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace skewtent
