#pragma once

#include <stdexcept>
#include <string>

namespace permstab {

/// A well-formed request that has no answer in the domain: degree
/// mismatch, element outside the group, failed precondition, bound
/// exceeded.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant that the mathematics guarantees has failed.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace permstab
