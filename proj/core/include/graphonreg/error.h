#pragma once

#include <stdexcept>
#include <string>

namespace graphonreg {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input or violated precondition (CLI exit code 2).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Input is well-formed but exceeds a computational budget (CLI exit code 3).
class BudgetError : public Error {
 public:
  using Error::Error;
};

// The premises of an inequality check do not hold; distinct from a "false"
// verdict.
class PremiseError : public Error {
 public:
  using Error::Error;
};

}  // namespace graphonreg
