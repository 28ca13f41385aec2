#pragma once

#include <stdexcept>
#include <string>

namespace gmprime {

/// Raised when an argument violates an operation's mathematical domain
/// (e.g. a bound smaller than a modulus, an even input to `decompose`).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an internal consistency check fails (e.g. two sieving
/// methods disagree on a prime count). Indicates a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gmprime
