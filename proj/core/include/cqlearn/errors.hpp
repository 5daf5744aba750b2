#pragma once

#include <stdexcept>
#include <string>

namespace cqlearn {

// Invalid user-facing input: malformed files, out-of-range parameters,
// unresolvable names. CLI maps this to exit code 2.
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical or enumeration guard tripped: indistinguishable states,
// degenerate noise rates, enumeration limits. CLI maps this to exit code 3.
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cqlearn
