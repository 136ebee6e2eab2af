#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vts {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Carries every violated scenario invariant, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class InvalidSpeed : public Error {
 public:
  using Error::Error;
};

class NegativeTime : public Error {
 public:
  using Error::Error;
};

class SpeedRatioOutOfRange : public Error {
 public:
  using Error::Error;
};

/// The virtual target coincides with the propagated evader.
class DegenerateFoci : public Error {
 public:
  using Error::Error;
};

/// An acos/asin argument drifted further outside [-1, 1] than rounding explains.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class InvalidGridSize : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

class InfeasibleAssignment : public Error {
 public:
  using Error::Error;
};

}  // namespace vts
