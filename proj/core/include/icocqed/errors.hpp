#pragma once

#include <stdexcept>

namespace icocqed {

// Argument outside the domain of an operation (tau past the transit time,
// gamma index below -1, angle out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Two states, or a state and an operation, disagree on the ket flavor.
class FlavorMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Conditioning on an outcome whose probability vanishes.
class ImpossiblePostselection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested branch of a closed-form state has identically zero amplitude.
class DegenerateBranch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Population reached the guard row of a truncated Fock space.
class TruncationOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed sweep configuration or command line input.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace icocqed
