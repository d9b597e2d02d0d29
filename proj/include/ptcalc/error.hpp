#pragma once

#include <stdexcept>
#include <string>

namespace ptcalc {

/// Malformed or out-of-contract input: bad conductor, non-subgroup, unresolvable
/// name. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Group enumeration refused because the order cap was hit.
class CapExceeded : public InputError {
 public:
  CapExceeded(const std::string& what, std::size_t partial)
      : InputError(what), partial_count_(partial) {}
  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t partial_count_;
};

/// An exact quantity that must be integral (or satisfy an identity) did not.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ptcalc
