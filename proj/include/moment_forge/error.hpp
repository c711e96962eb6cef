#pragma once

#include <stdexcept>
#include <string>

namespace moment_forge {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A table or buffer would exceed what can be allocated or indexed.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of an operation (absent shift, h = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A zeta factor or residue formula was evaluated at or onto a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// The near-diagonal pair enumeration would exceed its configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a persisted divisor table failed.
class CacheError : public Error {
 public:
  using Error::Error;
};

}  // namespace moment_forge
