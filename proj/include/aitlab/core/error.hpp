#pragma once

#include <stdexcept>
#include <string>

namespace aitlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input: files, flags, bit strings, machine tables.
class InputError : public Error {
 public:
  using Error::Error;
};

// A machine table that is not total or refers to states/tapes it does not have.
class SpecificationError : public InputError {
 public:
  using InputError::InputError;
};

// A machine that does not fit the size fields of the program encoding.
class EncodingOverflow : public InputError {
 public:
  using InputError::InputError;
};

// A mathematical precondition failed: conditioning on an event of probability
// zero, a zero normalizer, a postselection that is ill-posed, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

// Bounded evaluation of a test or flip rule ran out of steps.
class EvaluationError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace aitlab
