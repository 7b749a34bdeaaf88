#pragma once

#include <stdexcept>
#include <string>

namespace essbasis {

// Mirrors the C API status codes in essbasis.h.
enum class ErrorCode {
  kInvalidArgument = 1,
  kParse = 2,
  kOverflow = 3,
  kBudget = 4,
  kCoverage = 5,
  kIo = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace essbasis
