#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace primecycles {

enum class ErrorCode {
  kInvalidArgument,
  kOutOfRange,
  kResourceLimit,
  kUnsupportedSpec,
  kOutOfDomain,
  kEmptySupport,
  kIo,
  kInternal,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map them without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace primecycles
