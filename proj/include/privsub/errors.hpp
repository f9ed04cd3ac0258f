#pragma once

#include <stdexcept>
#include <string>

namespace privsub {

// Malformed or inconsistent input (bad token, mismatched dimensions).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well-formed but violates an operation's precondition
// (non-Abelian subgroup where an Abelian one is required, and so on).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A rank, cluster, or equality decision fell too close to its threshold to be
// made reliably in double precision.
class NumericalAmbiguity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace privsub
