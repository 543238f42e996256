#include "primecycles/errors.h"

namespace primecycles {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kResourceLimit: return "resource-limit";
    case ErrorCode::kUnsupportedSpec: return "unsupported-spec";
    case ErrorCode::kOutOfDomain: return "out-of-domain";
    case ErrorCode::kEmptySupport: return "empty-support";
    case ErrorCode::kIo: return "io-error";
    case ErrorCode::kInternal: return "internal-error";
  }
  return "unknown-error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace primecycles
