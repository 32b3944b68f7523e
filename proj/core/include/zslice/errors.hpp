#pragma once

#include <stdexcept>
#include <string>

namespace zslice {

/// Malformed or out-of-contract input (bad file, wrong shape, precondition).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bounded search ran out of budget. Distinct from a negative answer.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A certificate failed re-verification. Always a bug, never a user error.
class VerificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

inline void verify(bool ok, const std::string& what) {
  if (!ok) throw VerificationFailure(what);
}

}  // namespace zslice
