#pragma once

#include <stdexcept>
#include <string>

namespace anticomm {

enum class ErrorCode {
  invalid_dimension,
  invalid_input,
  budget_exceeded,
  out_of_domain,
  singular_point,
  numerical_failure,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_dimension: return "invalid-dimension";
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::out_of_domain: return "out-of-domain";
    case ErrorCode::singular_point: return "singular-point";
    case ErrorCode::numerical_failure: return "numerical-failure";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace anticomm
