#pragma once

#include <stdexcept>
#include <string>

namespace genlimit {

enum class ErrorCode {
  Schema = 1,
  FiniteLanguage,
  Registry,
  Capacity,
  Parameter,
  IndexRange,
  NoAttack,
  Admissibility,
  UnboundedSchedule,
  Io,
  Configuration,
};

const char* to_string(ErrorCode code) noexcept;

/// Every recoverable failure in the library surfaces as this type; the C API
/// maps `code()` one-to-one onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace genlimit
