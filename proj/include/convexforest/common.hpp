#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace convexforest {

// Counts in this library grow like phi^(2n); they are never stored in machine
// integers.
using BigInt = boost::multiprecision::cpp_int;

using NodeId = int;
using EdgeId = int;
using TaxonId = int;

inline constexpr NodeId kNoNode = -1;

// Bad input: malformed Newick, mismatched taxa, out-of-range arguments,
// characters that violate an operation's precondition.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : DomainError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A computer-assisted check (bound set, lower-bound transfer matrix) did not
// reproduce its expected result.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace convexforest
