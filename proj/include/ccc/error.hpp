#pragma once

#include <stdexcept>
#include <string>

namespace ccc {

// Base of every error raised by the library. Callers that only care about
// "bad input vs. bug" can catch Error and std::logic_error respectively.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

// An enumeration bound (word count, residue count, point count, ...) would be
// exceeded.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// A structural precondition of an operation does not hold (codes not linear,
// chain not nested, wrong number of levels, ...).
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class NotAMember : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Two independent evaluations that must agree did not. Always a bug.
class ConsistencyFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ccc
