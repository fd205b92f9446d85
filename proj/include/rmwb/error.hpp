#pragma once

#include <stdexcept>
#include <string>

namespace rmwb {

enum class ErrorCode {
  BadInput = 2,     // malformed files, axiom violations, bad arguments
  Violation = 1,    // a checked property failed to hold
  Budget = 3,       // a bounded search ran out of budget/depth
  Internal = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }
[[noreturn]] inline void fail_input(const std::string& msg) { fail(ErrorCode::BadInput, msg); }

}  // namespace rmwb
