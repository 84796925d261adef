#pragma once

#include <stdexcept>
#include <string>

namespace ringpairs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation outside a model's validity band.
class RangeError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ringpairs
