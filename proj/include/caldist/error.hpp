#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace caldist {

enum class ErrorKind {
  kInvalidInstance,
  kInvalidArgument,
  kEmptySubset,
  kZeroMass,
  kPartitionMismatch,
  kDomainMismatch,
  kDomainTooLarge,
  kStateSpaceTooLarge,
  kNotUniform,
  kDegenerateInstance,
  kEpsOutOfRange,
  kEmptySample,
  kAllZero,
  kMalformedInput,
};

std::string_view to_string(ErrorKind kind);

// Refusals are raised when an input is valid but exceeds a configured
// resource guard; callers (the CLI in particular) treat them differently
// from validation failures.
constexpr bool is_refusal(ErrorKind kind) {
  return kind == ErrorKind::kDomainTooLarge ||
         kind == ErrorKind::kStateSpaceTooLarge;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace caldist
