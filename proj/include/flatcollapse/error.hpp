#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatcollapse {

enum class ErrorCode {
  kInvalidArgument,
  kParseError,
  kDegreeCapExceeded,
  kFieldMismatch,
  kNotGramOrthogonal,
  kCocycleViolation,
  kPointGroupBoundExceeded,
  kElementNotInPointGroup,
  kNotInvariant,
  kIrrationalInput,
  kNotBieberbach,
  kValidationFailed,
  kNoProperInvariantSubspaceFound,
  kBudgetLimited,
  kRadiusTooSmall,
};

std::string_view error_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flatcollapse
